// JSON and CSV renderings of the exact arithmetic types. Polynomials are
// dense little-endian coefficient lists; cyclotomic elements are reduced
// representatives (the enclosing document carries the ring descriptor);
// algebra, divided-power and operator elements are sparse
// exponent/coefficient pair lists. Integers that fit in 64 bits are JSON
// numbers, anything larger degrades to a decimal string.
#pragma once

#include "divpow.hpp"
#include "weyl.hpp"

#include <json.hpp>

#include <string>

namespace qdp {

using Json = nlohmann::json;

Json int_to_json(const Int& v);
Json rat_to_json(const Rat& v); // number/string when integral, else "a/b"
Json zpoly_to_json(const ZPoly& f);
// {"num": [...], "den": d} with d the positive common denominator
Json qpoly_to_json(const QPoly& f);

// by ring kind: Zt -> [c...]; Zts -> [[c...]...] (outer index = s-power);
// CycF:p -> {"num": [...], "den": d}; CycR:p -> [c...]; Fp:p -> residue
Json relem_to_json(const RElem& z);
Json aelem_to_json(const AElem& z);   // [[exp, relem], ...], exponents ascending
Json dpelem_to_json(const DPElem& a); // {"trunc": N, "coeffs": [[i, aelem], ...]}
Json weyl_to_json(const WeylElem& w); // [[k, aelem], ...], nonzero terms only

// comma-joined dense coefficient list for CSV rows: Zt/Zts/CycR emit the
// t-representative (Zts values with positive s-degree are rejected), CycF
// emits reduced-representative entries as integers or a/b fractions, Fp
// emits the single residue
std::string relem_csv(const RElem& z);

} // namespace qdp
