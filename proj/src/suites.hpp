// Named verification suites behind the command line: each one re-checks a
// family of algebraic identities over a caller-chosen ring and reports
// per-case verdicts. Reports are deterministic: cases are sorted by key
// and randomized searches take an explicit seed.
#pragma once

#include "serialize.hpp"

#include <string>
#include <vector>

namespace qdp {

struct SuiteOptions {
    std::string ring;       // descriptor; empty picks the suite default
    long nmax = -1;         // -1 picks the suite default
    long degree = -1;       // -1 picks the suite default
    long p = -1;            // -1 picks the suite default
    unsigned long seed = 9181;
};

struct SuiteCase {
    std::string key;
    bool ok = false;
    std::string detail; // empty unless the case has something to say
    Json data;          // optional payload (null when unused)
};

struct SuiteReport {
    std::string suite;
    Json params; // the effective parameters the run used
    std::vector<SuiteCase> cases;
    long failures = 0;
};

std::vector<std::string> verify_suite_names();

// run one named identity suite; unknown names and invalid parameter
// combinations raise usage errors before any case runs
SuiteReport run_verify_suite(const std::string& name, const SuiteOptions& opt);

// run the correspondence roundtrip over a fixed instance suite; the ring
// must have positive q-characteristic. Case data carries the recovered
// curvature matrices.
SuiteReport run_simpson_suite(const std::string& ring_desc, const std::string& suite,
                              unsigned long seed = 9181);

// {suite, params, cases: [{case, ok, detail?, data?}], failures}
Json suite_report_to_json(const SuiteReport& rep);

} // namespace qdp
