#include "serialize.hpp"

#include <limits>
#include <sstream>

namespace qdp {

namespace {

const Int kInt64Max = Int(std::numeric_limits<long long>::max());
const Int kInt64Min = Int(std::numeric_limits<long long>::min());

} // namespace

Json int_to_json(const Int& v) {
    if (v >= kInt64Min && v <= kInt64Max) return Json(v.convert_to<long long>());
    return Json(v.str());
}

Json rat_to_json(const Rat& v) {
    if (denominator(v) == 1) return int_to_json(numerator(v));
    std::ostringstream out;
    out << numerator(v) << "/" << denominator(v);
    return Json(out.str());
}

Json zpoly_to_json(const ZPoly& f) {
    Json out = Json::array();
    for (const Int& c : f.coeffs()) out.push_back(int_to_json(c));
    return out;
}

Json qpoly_to_json(const QPoly& f) {
    Int den = 1;
    for (const Rat& c : f.coeffs()) den = lcm(den, Int(denominator(c)));
    Json num = Json::array();
    for (const Rat& c : f.coeffs()) num.push_back(int_to_json(Int(numerator(c) * (den / denominator(c)))));
    Json out;
    out["num"] = std::move(num);
    out["den"] = int_to_json(den);
    return out;
}

Json relem_to_json(const RElem& z) {
    switch (z.ring().kind()) {
    case RingKind::GenericZt: {
        const BiZ& v = std::get<BiZ>(z.storage());
        if (!z.ring().with_s()) return zpoly_to_json(v.coeff(0));
        Json out = Json::array();
        for (int j = 0; j <= v.s_degree(); ++j) out.push_back(zpoly_to_json(v.coeff(j)));
        return out;
    }
    case RingKind::CyclotomicField:
        return qpoly_to_json(std::get<QPoly>(z.storage()));
    case RingKind::CyclotomicRing:
        return zpoly_to_json(std::get<ZPoly>(z.storage()));
    case RingKind::PrimeField:
        return Json(std::get<long>(z.storage()));
    }
    fail(ErrorKind::internal, "unhandled ring kind");
}

Json aelem_to_json(const AElem& z) {
    Json out = Json::array();
    for (const auto& [e, c] : z.terms()) out.push_back(Json::array({Json(e), relem_to_json(c)}));
    return out;
}

Json dpelem_to_json(const DPElem& a) {
    Json coeffs = Json::array();
    for (const auto& [i, z] : a.coeffs())
        coeffs.push_back(Json::array({Json(i), aelem_to_json(z)}));
    Json out;
    out["trunc"] = a.trunc();
    out["coeffs"] = std::move(coeffs);
    return out;
}

Json weyl_to_json(const WeylElem& w) {
    Json out = Json::array();
    for (int k = 0; k <= w.degree(); ++k) {
        AElem c = w.coeff(k);
        if (!c.is_zero()) out.push_back(Json::array({Json(k), aelem_to_json(c)}));
    }
    return out;
}

std::string relem_csv(const RElem& z) {
    std::ostringstream out;
    auto join_z = [&](const ZPoly& f) {
        const auto& c = f.coeffs();
        if (c.empty()) {
            out << 0;
            return;
        }
        for (size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
    };
    switch (z.ring().kind()) {
    case RingKind::GenericZt: {
        const BiZ& v = std::get<BiZ>(z.storage());
        if (v.s_degree() > 0)
            fail(ErrorKind::usage, "values with s-content have no flat CSV form; use json");
        join_z(v.coeff(0));
        return out.str();
    }
    case RingKind::CyclotomicField: {
        const QPoly& f = std::get<QPoly>(z.storage());
        if (f.is_zero()) return "0";
        for (int i = 0; i <= f.degree(); ++i) {
            if (i) out << ",";
            Rat c = f.coeff(i);
            if (denominator(c) == 1)
                out << numerator(c);
            else
                out << numerator(c) << "/" << denominator(c);
        }
        return out.str();
    }
    case RingKind::CyclotomicRing:
        join_z(std::get<ZPoly>(z.storage()));
        return out.str();
    case RingKind::PrimeField:
        out << std::get<long>(z.storage());
        return out.str();
    }
    fail(ErrorKind::internal, "unhandled ring kind");
}

} // namespace qdp
