#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gsr/bigint.hpp"
#include "gsr/cball.hpp"
#include "gsr/constants.hpp"
#include "gsr/errors.hpp"
#include "gsr/gs_instance.hpp"
#include "gsr/number_field.hpp"
#include "gsr/real_interval.hpp"
#include "gsr/siegel.hpp"

namespace gsr {

// Insertion-ordered so reports serialize in a stable, readable order.
using Json = nlohmann::ordered_json;

// ---- value formatting ----

inline double mf_to_double(const MF& v, mpfr_rnd_t rnd) { return mpfr_get_d(v.p(), rnd); }

inline std::string rat_str(const BigRat& r) { return r.get_str(); }
inline std::string int_str(const BigInt& z) { return z.get_str(); }

// {"mid": .., "rad": ..} with the radius rounded outward
inline Json iv_json(const RInterval& iv) {
    MF mid = iv.mid();
    MF r1(64), r2(64);
    mpfr_sub(r1.p(), iv.hi.p(), mid.p(), MPFR_RNDU);
    mpfr_sub(r2.p(), mid.p(), iv.lo.p(), MPFR_RNDU);
    mpfr_max(r1.p(), r1.p(), r2.p(), MPFR_RNDU);
    Json j;
    j["mid"] = mf_to_double(mid, MPFR_RNDN);
    j["rad"] = mf_to_double(r1, MPFR_RNDU);
    return j;
}

inline Json cball_json(const CBall& b) {
    Json j;
    j["re_mid"] = mf_to_double(b.re, MPFR_RNDN);
    j["im_mid"] = mf_to_double(b.im, MPFR_RNDN);
    j["rad"] = mf_to_double(b.rad, MPFR_RNDU);
    return j;
}

// ---- rational and element literals ----

// integer or num/den, optional leading sign
inline BigRat parse_rational(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string t = s.substr(b, e - b);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty()) throw ParamError("empty rational literal");
    for (size_t i = 0; i < t.size(); ++i) {
        char c = t[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                  (c == '-' && i == 0);
        if (!ok) throw ParamError("bad rational literal '" + s + "'");
    }
    BigRat r;
    if (mpq_set_str(r.get_mpq_t(), t.c_str(), 10) != 0)
        throw ParamError("bad rational literal '" + s + "'");
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0)
        throw ParamError("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

// Polynomial in x with rational coefficients, e.g. "1/2 + 3*x - x^2".
// Terms need explicit signs between them; '*' between coefficient and x is
// optional. The result is reduced into the field.
inline NFElement parse_element_literal(const NumberField& F, const std::string& src) {
    size_t i = 0;
    const size_t n = src.size();
    auto skip = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
    };
    auto fail = [&](const std::string& msg) {
        throw ParamError("element literal '" + src + "': " + msg + " at offset " +
                         std::to_string(i));
    };
    auto read_uint = [&]() -> std::string {
        size_t s = i;
        while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
        if (i == s) fail("expected digits");
        return src.substr(s, i - s);
    };

    std::vector<BigRat> acc;
    auto add_term = [&](const BigRat& c, unsigned long deg) {
        if (acc.size() <= deg) acc.resize(deg + 1, BigRat(0));
        acc[deg] += c;
    };

    skip();
    if (i == n) fail("empty literal");
    bool first = true;
    while (true) {
        skip();
        if (i == n) break;
        int sign = 1;
        if (src[i] == '+' || src[i] == '-') {
            if (src[i] == '-') sign = -1;
            ++i;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        BigRat coeff(1);
        bool have_coeff = false;
        if (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) {
            std::string num = read_uint();
            std::string den;
            if (i < n && src[i] == '/') {
                ++i;
                den = read_uint();
            }
            coeff = den.empty() ? BigRat(BigInt(num)) : make_rat(BigInt(num), BigInt(den));
            have_coeff = true;
            skip();
            if (i < n && src[i] == '*') {
                ++i;
                skip();
                if (i == n || src[i] != 'x') fail("expected x after '*'");
            }
        }
        unsigned long deg = 0;
        if (i < n && src[i] == 'x') {
            ++i;
            deg = 1;
            skip();
            if (i < n && src[i] == '^') {
                ++i;
                skip();
                std::string e = read_uint();
                if (e.size() > 4) fail("exponent too large");
                deg = std::stoul(e);
                if (deg > 4096) fail("exponent too large");
            }
        } else if (!have_coeff) {
            fail("expected coefficient or x");
        }
        if (sign < 0) coeff = -coeff;
        add_term(coeff, deg);
        first = false;
    }
    return F.from_qpoly(QPoly(acc));
}

// Canonical rendering; parse_element_literal round-trips it.
inline std::string element_literal(const NFElement& e) {
    std::string out;
    for (size_t d = 0; d < e.coords.size(); ++d) {
        const BigRat& c = e.coords[d];
        if (c == 0) continue;
        BigRat a = abs(c);
        if (out.empty())
            out += (c < 0) ? "-" : "";
        else
            out += (c < 0) ? " - " : " + ";
        bool unit = (a == 1) && d > 0;
        if (!unit) out += rat_str(a);
        if (d > 0) {
            if (!unit) out += "*";
            out += "x";
            if (d > 1) out += "^" + std::to_string(d);
        }
    }
    return out.empty() ? "0" : out;
}

// ---- field description ----

inline BigInt json_bigint(const Json& v, const char* what) {
    if (v.is_number_integer()) return BigInt(v.get<long>());
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (!s.empty() && s[0] == '+') s.erase(0, 1);
        bool ok = !s.empty();
        for (size_t i = 0; ok && i < s.size(); ++i)
            ok = std::isdigit(static_cast<unsigned char>(s[i])) || (s[i] == '-' && i == 0);
        if (!ok || s == "-") throw ParamError(std::string(what) + ": bad integer '" + s + "'");
        return BigInt(s);
    }
    throw ParamError(std::string(what) + " must be an integer");
}

// {"poly": [c0, c1, ...] lowest-first, "precision_bits": optional}
inline NumberField field_from_json(const Json& j, std::optional<mpfr_prec_t> precision_override = {}) {
    if (!j.is_object() || !j.contains("poly") || !j["poly"].is_array())
        throw ParamError("field description needs a \"poly\" array");
    ZPoly p;
    for (const auto& c : j["poly"]) p.push_back(json_bigint(c, "poly coefficient"));
    while (!p.empty() && p.back() == 0) p.pop_back();
    if (p.size() < 2) throw ParamError("defining polynomial must have degree >= 1");
    long prec = 128;
    if (j.contains("precision_bits")) {
        if (!j["precision_bits"].is_number_integer())
            throw ParamError("precision_bits must be an integer");
        prec = j["precision_bits"].get<long>();
        if (prec < 16 || prec > (1L << 20)) throw ParamError("precision_bits out of range");
    }
    if (precision_override) prec = static_cast<long>(*precision_override);
    return make_field(p, static_cast<mpfr_prec_t>(prec));
}

inline Json field_to_json(const NumberField& F) {
    Json j;
    Json coeffs = Json::array();
    for (const auto& c : F.poly) {
        if (mpz_fits_slong_p(c.get_mpz_t()))
            coeffs.push_back(c.get_si());
        else
            coeffs.push_back(int_str(c));
    }
    j["poly"] = std::move(coeffs);
    j["precision_bits"] = static_cast<long>(F.working_precision);
    return j;
}

// ---- matrix description ----

// Either a rational matrix (field "Q") or a matrix over a number field.
struct ParsedMatrix {
    bool over_Q = false;
    std::optional<NumberField> field;
    IntMatrix zmat;   // over_Q: rows scaled to integers by each row's lcm
    NFMatrix nfmat;   // otherwise
    Json echo;
};

inline std::string json_entry_literal(const Json& v) {
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    throw ParamError("matrix entries must be integers or literal strings");
}

// {"field": "Q" | {...}, "rows": [[entry, ...], ...]}
inline ParsedMatrix matrix_from_json(const Json& j, std::optional<mpfr_prec_t> precision_override = {}) {
    if (!j.is_object() || !j.contains("field") || !j.contains("rows"))
        throw ParamError("matrix description needs \"field\" and \"rows\"");
    const Json& rows = j["rows"];
    if (!rows.is_array() || rows.empty() || !rows[0].is_array() || rows[0].empty())
        throw ParamError("\"rows\" must be a nonempty array of nonempty arrays");
    const size_t R = rows.size(), C = rows[0].size();
    for (const auto& r : rows)
        if (!r.is_array() || r.size() != C) throw ParamError("matrix rows must have equal length");

    ParsedMatrix M;
    M.echo = Json::object();
    Json erows = Json::array();
    if (j["field"].is_string() && j["field"].get<std::string>() == "Q") {
        M.over_Q = true;
        M.echo["field"] = "Q";
        M.zmat = IntMatrix(R, C);
        for (size_t i = 0; i < R; ++i) {
            std::vector<BigRat> row(C);
            BigInt den(1);
            Json erow = Json::array();
            for (size_t k = 0; k < C; ++k) {
                row[k] = parse_rational(json_entry_literal(rows[i][k]));
                den = lcm(den, rat_den(row[k]));
                erow.push_back(rat_str(row[k]));
            }
            for (size_t k = 0; k < C; ++k) {
                BigRat scaled = row[k] * BigRat(den);
                M.zmat.at(i, k) = rat_num(scaled);
            }
            erows.push_back(std::move(erow));
        }
    } else {
        M.field = field_from_json(j["field"], precision_override);
        M.echo["field"] = field_to_json(*M.field);
        M.nfmat = NFMatrix(R, C, *M.field);
        for (size_t i = 0; i < R; ++i) {
            Json erow = Json::array();
            for (size_t k = 0; k < C; ++k) {
                NFElement e = parse_element_literal(*M.field, json_entry_literal(rows[i][k]));
                erow.push_back(element_literal(e));
                M.nfmat.at(i, k) = std::move(e);
            }
            erows.push_back(std::move(erow));
        }
    }
    M.echo["rows"] = std::move(erows);
    return M;
}

// ---- instance description ----

struct LoadedInstance {
    GSInstance inst;
    AuxParams params;
    Json echo;  // normalized copy sufficient to re-run
};

// {"field": {...}, "alpha": lit, "beta": lit, "gamma": lit,
//  "sigma_index": int, "q": int, "mode": "gelfond"|"synthetic",
//  "m", "n": required for synthetic}
inline LoadedInstance instance_from_json(const Json& j, std::optional<mpfr_prec_t> precision_override = {},
                                         std::optional<size_t> q_override = {},
                                         std::optional<GSMode> mode_override = {}) {
    if (!j.is_object()) throw ParamError("instance description must be an object");
    for (const char* key : {"field", "alpha", "beta", "gamma", "sigma_index", "q", "mode"})
        if (!j.contains(key)) throw ParamError(std::string("instance needs \"") + key + "\"");

    NumberField F = field_from_json(j["field"], precision_override);
    NFElement alpha = parse_element_literal(F, json_entry_literal(j["alpha"]));
    NFElement beta = parse_element_literal(F, json_entry_literal(j["beta"]));
    NFElement gamma = parse_element_literal(F, json_entry_literal(j["gamma"]));
    if (!j["sigma_index"].is_number_integer() || j["sigma_index"].get<long>() < 0)
        throw ParamError("sigma_index must be a nonnegative integer");
    size_t sigma = j["sigma_index"].get<size_t>();

    std::string mode_s = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
    GSMode mode;
    if (mode_s == "gelfond")
        mode = GSMode::gelfond;
    else if (mode_s == "synthetic")
        mode = GSMode::synthetic;
    else
        throw ParamError("mode must be \"gelfond\" or \"synthetic\"");
    if (mode_override) mode = *mode_override;

    if (!j["q"].is_number_integer() || j["q"].get<long>() < 1)
        throw ParamError("q must be a positive integer");
    size_t q = j["q"].get<size_t>();
    if (q_override) q = *q_override;

    LoadedInstance L{make_instance(F, sigma, alpha, beta, gamma, mode), AuxParams{}, Json::object()};
    if (mode == GSMode::gelfond) {
        L.params = derive_params(F.h, q);
    } else {
        if (!j.contains("m") || !j.contains("n"))
            throw ParamError("synthetic mode needs \"m\" and \"n\"");
        L.params = derive_params_synthetic(F.h, q, j["m"].get<size_t>(), j["n"].get<size_t>());
    }

    L.echo["field"] = field_to_json(F);
    L.echo["alpha"] = element_literal(alpha);
    L.echo["beta"] = element_literal(beta);
    L.echo["gamma"] = element_literal(gamma);
    L.echo["sigma_index"] = sigma;
    L.echo["q"] = q;
    L.echo["mode"] = (mode == GSMode::gelfond) ? "gelfond" : "synthetic";
    if (mode == GSMode::synthetic) {
        L.echo["m"] = L.params.m;
        L.echo["n"] = L.params.n;
    }
    return L;
}

// ---- constants and threshold serialization ----

// {"name": {"log10_upper": float, "exact": optional string}}
inline Json constants_to_json(const ConstantsTable& T) {
    Json j;
    auto exact_int = [](const BigInt& v) {
        Json e;
        e["log10_upper"] =
            mf_to_double(log10_(RInterval::from_int(v, 64)).hi, MPFR_RNDU);
        e["exact"] = int_str(v);
        return e;
    };
    j["c_den"] = exact_int(T.c_den);
    j["c_basis"] = exact_int(T.c_basis);
    for (const auto& [name, e] : T.entries) {
        Json v;
        v["log10_upper"] = mf_to_double(e.log10.hi, MPFR_RNDU);
        if (e.has_exact) v["exact"] = rat_str(e.exact);
        v["formula"] = e.formula;
        j[name] = std::move(v);
    }
    return j;
}

inline Json threshold_to_json(const ThresholdReport& R) {
    Json j;
    j["r_star"] = int_str(R.r_star);
    j["no_threshold"] = R.no_threshold;
    j["minimal_certified"] = R.minimal_certified;
    j["phi_at_r_star"] = iv_json(R.phi_at_r_star);
    j["dphi_at_r_star"] = iv_json(R.dphi_at_r_star);
    j["q_required_exact"] = R.q_required_exact;
    if (R.q_required_exact) j["q_required"] = int_str(R.q_required);
    j["log10_q_required"] = iv_json(R.log10_q_required);
    j["n_of_q_ge_r_star"] = R.n_of_q_ge_r_star;
    j["n_current"] = R.n_current;
    j["n_current_ge_r_star"] = R.n_current_ge_r_star;
    return j;
}

}  // namespace gsr
