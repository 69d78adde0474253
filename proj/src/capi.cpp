#include "qdp.h"

#include "frobenius.hpp"
#include "qcomb.hpp"
#include "suites.hpp"
#include "weyl.hpp"

#include <cstdlib>
#include <cstring>
#include <sstream>

using namespace qdp;

struct qdp_ring {
    Ring ring;
    std::string desc;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

int code_for(const Error& e) {
    return e.kind() == ErrorKind::falsified ? QDP_FALSIFIED : QDP_USAGE;
}

// every entry point funnels through here so exceptions never cross the
// C boundary
template <typename F>
int guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        set_error(e.what());
        return code_for(e);
    } catch (const std::exception& e) {
        set_error(e.what());
        return QDP_USAGE;
    }
}

int hand_out(const std::string& s, char** out) {
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (!buf) {
        set_error("out of memory");
        return QDP_USAGE;
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
    return QDP_OK;
}

enum class Format { json, csv, text };

Format parse_format(const char* format, bool csv_allowed) {
    std::string f = format ? format : "json";
    if (f == "json") return Format::json;
    if (f == "csv" && csv_allowed) return Format::csv;
    if (f == "text") return Format::text;
    fail(ErrorKind::usage, "unknown format: " + f);
}

void require(bool cond, const char* msg) {
    if (!cond) fail(ErrorKind::usage, msg);
}

std::string zpoly_csv(const ZPoly& f) {
    std::ostringstream out;
    const auto& c = f.coeffs();
    if (c.empty()) {
        out << 0;
        return out.str();
    }
    for (size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    return out.str();
}

std::string report_text(const SuiteReport& rep) {
    std::ostringstream out;
    out << "suite: " << rep.suite << "\n";
    out << "params: " << rep.params.dump() << "\n";
    for (const auto& c : rep.cases) {
        out << (c.ok ? "ok   " : "FAIL ") << c.key;
        if (!c.ok && !c.detail.empty()) out << ": " << c.detail;
        out << "\n";
    }
    out << "failures: " << rep.failures << "\n";
    return out.str();
}

int finish_report(const SuiteReport& rep, Format fmt, char** out) {
    std::string text = fmt == Format::json ? suite_report_to_json(rep).dump(2) + "\n"
                                           : report_text(rep);
    int rc = hand_out(text, out);
    if (rc != QDP_OK) return rc;
    if (rep.failures > 0) {
        set_error("the suite has failing cases");
        return QDP_FALSIFIED;
    }
    return QDP_OK;
}

} // namespace

extern "C" {

const char* qdp_last_error(void) { return g_last_error.c_str(); }

void qdp_string_free(char* s) { std::free(s); }

int qdp_ring_parse(const char* descriptor, qdp_ring** out) {
    return guarded([&]() {
        require(descriptor != nullptr, "missing ring descriptor");
        require(out != nullptr, "missing output parameter");
        Ring r = Ring::parse(descriptor);
        *out = new qdp_ring{r, r.descriptor()};
        return QDP_OK;
    });
}

void qdp_ring_free(qdp_ring* r) { delete r; }

const char* qdp_ring_descriptor(const qdp_ring* r) {
    return r ? r->desc.c_str() : "";
}

int qdp_qbinom_table(const qdp_ring* r, long nmax, const char* format, char** out) {
    return guarded([&]() {
        require(r != nullptr, "missing ring handle");
        require(out != nullptr, "missing output parameter");
        require(nmax >= 0, "nmax must be nonnegative");
        Format fmt = parse_format(format, true);
        RElem q = r->ring.q();

        if (fmt == Format::json) {
            Json rows = Json::array();
            for (long n = 0; n <= nmax; ++n)
                for (long k = 0; k <= n; ++k) {
                    Json row;
                    row["n"] = n;
                    row["k"] = k;
                    row["value"] = relem_to_json(q_binomial_at(q, n, k));
                    rows.push_back(std::move(row));
                }
            Json doc;
            doc["table"] = "qbinom";
            doc["ring"] = r->desc;
            doc["nmax"] = nmax;
            doc["rows"] = std::move(rows);
            return hand_out(doc.dump(2) + "\n", out);
        }

        std::ostringstream os;
        for (long n = 0; n <= nmax; ++n)
            for (long k = 0; k <= n; ++k) {
                RElem v = q_binomial_at(q, n, k);
                if (fmt == Format::csv)
                    os << n << "," << k << "," << relem_csv(v) << "\n";
                else
                    os << "(" << n << " choose " << k << ")_q = " << v.str() << "\n";
            }
        return hand_out(os.str(), out);
    });
}

int qdp_frob_coeffs_table(long p, long nmax, const char* format, char** out) {
    return guarded([&]() {
        require(out != nullptr, "missing output parameter");
        require(p >= 2, "the exponent must be at least 2");
        require(nmax >= 0, "nmax must be nonnegative");
        Format fmt = parse_format(format, true);
        int ip = static_cast<int>(p);
        bool any_falsified = false;

        struct CEntry {
            long n, i;
            bool defined;
            QPoly value;
        };
        std::vector<CEntry> centries;
        for (long n = 0; n <= nmax; ++n)
            for (long i = n; i <= p * n; ++i) {
                try {
                    centries.push_back({n, i, true, frob_coeff_c(n, i, ip)});
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::falsified) throw;
                    any_falsified = true;
                    centries.push_back({n, i, false, QPoly()});
                }
            }

        std::string text;
        if (fmt == Format::json) {
            Json a = Json::array(), b = Json::array(), c = Json::array();
            for (long n = 0; n <= nmax; ++n)
                for (long i = n; i <= p * n; ++i) {
                    a.push_back({{"n", n}, {"i", i}, {"coeffs", zpoly_to_json(frob_coeff_a(n, i, ip))}});
                    b.push_back({{"n", n}, {"i", i}, {"coeffs", zpoly_to_json(frob_coeff_b(n, i, ip))}});
                }
            for (const auto& e : centries) {
                Json row;
                row["n"] = e.n;
                row["i"] = e.i;
                row["status"] = e.defined ? "defined" : "falsified";
                if (e.defined) {
                    Json nd = qpoly_to_json(e.value);
                    row["num"] = nd["num"];
                    row["den"] = nd["den"];
                }
                c.push_back(std::move(row));
            }
            Json doc;
            doc["table"] = "frob-coeffs";
            doc["p"] = p;
            doc["nmax"] = nmax;
            doc["A"] = std::move(a);
            doc["B"] = std::move(b);
            doc["C"] = std::move(c);
            text = doc.dump(2) + "\n";
        } else if (fmt == Format::csv) {
            std::ostringstream os;
            for (long n = 0; n <= nmax; ++n)
                for (long i = n; i <= p * n; ++i)
                    os << "A," << n << "," << i << "," << zpoly_csv(frob_coeff_a(n, i, ip)) << "\n";
            for (long n = 0; n <= nmax; ++n)
                for (long i = n; i <= p * n; ++i)
                    os << "B," << n << "," << i << "," << zpoly_csv(frob_coeff_b(n, i, ip)) << "\n";
            for (const auto& e : centries) {
                os << "C," << e.n << "," << e.i << ",";
                if (!e.defined) {
                    os << "falsified\n";
                    continue;
                }
                Json nd = qpoly_to_json(e.value);
                os << "defined," << nd["den"].dump();
                for (const auto& coef : nd["num"]) os << "," << coef.dump();
                os << "\n";
            }
            text = os.str();
        } else {
            std::ostringstream os;
            for (long n = 0; n <= nmax; ++n)
                for (long i = n; i <= p * n; ++i) {
                    os << "A(" << n << "," << i << ") = " << frob_coeff_a(n, i, ip).str() << "\n";
                    os << "B(" << n << "," << i << ") = " << frob_coeff_b(n, i, ip).str() << "\n";
                }
            for (const auto& e : centries) {
                os << "C(" << e.n << "," << e.i << ") = ";
                if (e.defined)
                    os << e.value.str() << "\n";
                else
                    os << "falsified (not polynomial)\n";
            }
            text = os.str();
        }

        int rc = hand_out(text, out);
        if (rc != QDP_OK) return rc;
        if (any_falsified) {
            set_error("the normalized table contains non-polynomial entries");
            return QDP_FALSIFIED;
        }
        return QDP_OK;
    });
}

int qdp_center_table(const qdp_ring* r, long degree, const char* format, char** out) {
    return guarded([&]() {
        require(r != nullptr, "missing ring handle");
        require(out != nullptr, "missing output parameter");
        require(degree >= 0, "degree must be nonnegative");
        Format fmt = parse_format(format, true);
        Algebra alg = r->ring.with_s() ? Algebra::with_s(r->ring)
                                       : Algebra::polynomial(r->ring);
        auto cent = centralizer_basis(alg, degree);
        auto zc = center_basis(alg, degree);

        if (fmt == Format::json) {
            Json jc = Json::array(), jz = Json::array();
            for (const auto& w : cent) jc.push_back(weyl_to_json(w));
            for (const auto& w : zc) jz.push_back(weyl_to_json(w));
            Json doc;
            doc["table"] = "center";
            doc["ring"] = r->desc;
            doc["degree"] = degree;
            doc["centralizer"] = std::move(jc);
            doc["center"] = std::move(jz);
            return hand_out(doc.dump(2) + "\n", out);
        }

        std::ostringstream os;
        if (fmt == Format::csv) {
            auto emit = [&](const char* section, const std::vector<WeylElem>& ops) {
                for (size_t idx = 0; idx < ops.size(); ++idx)
                    for (int k = 0; k <= ops[idx].degree(); ++k) {
                        AElem z = ops[idx].coeff(k);
                        const auto& terms = z.terms();
                        for (const auto& [e, coef] : terms)
                            os << section << "," << idx << "," << k << "," << e << ","
                               << relem_csv(coef) << "\n";
                    }
            };
            emit("centralizer", cent);
            emit("center", zc);
        } else {
            for (size_t idx = 0; idx < cent.size(); ++idx)
                os << "centralizer[" << idx << "] = " << cent[idx].str() << "\n";
            for (size_t idx = 0; idx < zc.size(); ++idx)
                os << "center[" << idx << "] = " << zc[idx].str() << "\n";
        }
        return hand_out(os.str(), out);
    });
}

int qdp_verify_suite(const char* suite, const char* ring, long nmax, long degree, long p,
                     unsigned long seed, const char* format, char** out) {
    return guarded([&]() {
        require(suite != nullptr, "missing suite name");
        require(out != nullptr, "missing output parameter");
        Format fmt = parse_format(format, false);
        SuiteOptions opt;
        opt.ring = ring ? ring : "";
        opt.nmax = nmax;
        opt.degree = degree;
        opt.p = p;
        opt.seed = seed;
        SuiteReport rep = run_verify_suite(suite, opt);
        return finish_report(rep, fmt, out);
    });
}

int qdp_simpson_suite(const char* ring, const char* suite, unsigned long seed,
                      const char* format, char** out) {
    return guarded([&]() {
        require(ring != nullptr, "missing ring descriptor");
        require(out != nullptr, "missing output parameter");
        Format fmt = parse_format(format, false);
        SuiteReport rep = run_simpson_suite(ring, suite ? suite : "default", seed);
        return finish_report(rep, fmt, out);
    });
}

const char* const* qdp_verify_suites(void) {
    static const char* const names[] = {"center", "comdlef", "gooddf", "lucas",
                                        "sqform-assoc", nullptr};
    return names;
}

} // extern "C"
