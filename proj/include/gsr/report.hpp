#pragma once

#include <algorithm>
#include <chrono>
#include <iterator>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gsr/analytic.hpp"
#include "gsr/io.hpp"

namespace gsr {

struct PipelineOptions {
    mpfr_prec_t precision = 128;      // starting precision, doubled on exhaustion
    mpfr_prec_t max_precision = 1024;
    double target_width = -1.0;       // <= 0: width goals derived from precision
    std::optional<size_t> q_override;
    std::optional<GSMode> mode_override;
};

struct PipelineOutcome {
    bool ok = false;                // all hard assertions hold, no stage failed
    std::string failed_stage;       // empty when ok
    std::string failure_message;
    size_t r = 0, l0 = 0;
    mpfr_prec_t precision_used = 0;
    Json report;
};

namespace detail_report {

inline const char* mode_name(GSMode m) { return m == GSMode::gelfond ? "gelfond" : "synthetic"; }

inline Json params_json(const AuxParams& p) {
    Json j;
    j["h"] = p.h;
    j["m"] = p.m;
    j["n"] = p.n;
    j["q"] = p.q;
    j["t"] = p.t;
    j["rows"] = p.rows();
    j["cols"] = p.cols();
    j["clearing_exponent"] = p.clearing_exponent();
    return j;
}

inline Json comparison_json(const BoundComparison& c) {
    Json j;
    j["lhs_log10"] = iv_json(c.lhs_log10);
    j["rhs_log10"] = iv_json(c.rhs_log10);
    j["holds"] = cert_name(c.holds);
    return j;
}

inline std::vector<NFElement> regroup_flat(const NumberField& F, const AuxParams& params,
                                           const IntVec& v) {
    std::vector<NFElement> elems;
    elems.reserve(params.t);
    for (size_t j = 0; j < params.t; ++j) {
        NFElement e = F.zero();
        for (size_t k = 0; k < F.h; ++k) e.coords[k] = BigRat(v[j * F.h + k]);
        elems.push_back(std::move(e));
    }
    return elems;
}

inline bool annihilates_exactly(const NumberField& F, const NFMatrix& M,
                                const std::vector<NFElement>& eta) {
    for (size_t row = 0; row < M.rows; ++row) {
        NFElement s = F.zero();
        for (size_t col = 0; col < M.cols; ++col) s = F.add(s, F.mul(eta[col], M.at(row, col)));
        if (!s.is_zero()) return false;
    }
    return true;
}

inline NFElement exponent_value(const GSInstance& inst, const AuxParams& params, size_t col) {
    auto [a, b] = params.col_ab(col);
    return inst.field.add(inst.field.from_rational(BigRat(static_cast<long>(a))),
                          inst.field.scalar_mul(BigRat(static_cast<long>(b)), inst.beta));
}

// Distinctness of a + b*beta restricted to the support of eta; the global
// check can fail on degenerate rational beta while the exponentials actually
// used stay independent.
inline bool injective_on_support(const GSInstance& inst, const AuxParams& params,
                                 const std::vector<NFElement>& eta) {
    std::vector<std::vector<BigRat>> seen;
    for (size_t col = 0; col < params.t; ++col) {
        if (eta[col].is_zero()) continue;
        NFElement v = exponent_value(inst, params, col);
        for (const auto& c : seen)
            if (c == v.coords) return false;
        seen.push_back(v.coords);
    }
    return true;
}

// Solves the system restricted to one representative column per distinct
// exponent value (first in column order). Any nonzero solution has injective
// support by construction, so the Vandermonde argument guarantees the order
// scan terminates on it. Returns empty when the restriction leaves too few
// columns for an underdetermined system.
inline std::vector<NFElement> injective_support_solution(const GSInstance& inst,
                                                         const AuxParams& params,
                                                         const NFMatrix& M) {
    const NumberField& F = inst.field;
    std::vector<size_t> reps;
    std::vector<std::vector<BigRat>> seen;
    for (size_t col = 0; col < params.t; ++col) {
        NFElement v = exponent_value(inst, params, col);
        bool dup = false;
        for (const auto& c : seen)
            if (c == v.coords) {
                dup = true;
                break;
            }
        if (!dup) {
            seen.push_back(v.coords);
            reps.push_back(col);
        }
    }
    if (reps.size() <= M.rows) return {};
    NFMatrix R(M.rows, reps.size(), F);
    for (size_t i = 0; i < M.rows; ++i)
        for (size_t j = 0; j < reps.size(); ++j) R.at(i, j) = M.at(i, reps[j]);
    SiegelSolutionOK s = siegel_OK(F, R);
    std::vector<NFElement> eta(params.t, F.zero());
    for (size_t j = 0; j < reps.size(); ++j) eta[reps[j]] = s.vector[j];
    if (!annihilates_exactly(F, M, eta)) return {};
    return eta;
}

}  // namespace detail_report

// End-to-end run: constants, cleared system, Siegel solve, order scan (with
// kernel-basis fallback when every derivative sum of the first solution
// vanishes), norm check, both bound reports, synthetic integral validation,
// and the contradiction threshold. Soft flags are recorded tri-state and
// never affect ok; hard assertions do.
inline PipelineOutcome run_pipeline(const Json& instance_json, const PipelineOptions& opts) {
    using clock = std::chrono::steady_clock;
    PipelineOutcome out;

    mpfr_prec_t prec = opts.precision;
    for (;; prec *= 2) {
        out = PipelineOutcome{};
        out.precision_used = prec;
        Json timings = Json::array();
        std::string stage = "load";
        auto t0 = clock::now();
        auto mark = [&](const std::string& next) {
            auto t1 = clock::now();
            Json e;
            e["stage"] = stage;
            e["seconds"] = std::chrono::duration<double>(t1 - t0).count();
            timings.push_back(std::move(e));
            t0 = t1;
            stage = next;
        };

        try {
            LoadedInstance L =
                instance_from_json(instance_json, prec, opts.q_override, opts.mode_override);
            const GSInstance& inst = L.inst;
            const AuxParams& params = L.params;
            const NumberField& F = inst.field;

            Json rep;
            rep["instance"] = L.echo;
            rep["mode"] = detail_report::mode_name(inst.mode);
            rep["precision_bits"] = static_cast<long>(prec);
            rep["params"] = detail_report::params_json(params);
            mark("constants");

            ConstantsTable T = compute_constants(inst, params, prec);
            rep["constants"] = constants_to_json(T);
            mark("injectivity");

            bool inj = check_injectivity(inst, params);
            rep["injectivity"] = inj;
            mark("system");

            auto [M, houseRep] = build_cleared_matrix(inst, params);
            {
                Json j;
                j["rows"] = M.rows;
                j["cols"] = M.cols;
                j["max_house"] = iv_json(houseRep.max_house);
                j["max_log10"] = iv_json(houseRep.max_log10);
                j["bound_log10"] = iv_json(houseRep.bound_log10);
                j["house_le_bound"] = cert_name(houseRep.max_le_bound);
                rep["system"] = std::move(j);
            }
            mark("siegel");

            EtaSolution sol = solve_coefficients(inst, params, M);
            {
                const SiegelSolutionOK& c = sol.siegel_certificate;
                Json j;
                j["claimed_bound"] = iv_json(c.claimed_bound);
                j["achieved_house"] = iv_json(c.achieved);
                j["bound_satisfied"] = c.bound_satisfied;
                j["kernel_rank"] = c.reduced_basis.size();
                rep["siegel"] = std::move(j);
            }
            mark("order_scan");

            std::vector<NFElement> eta = sol.eta;
            bool substituted = false;
            size_t retries = 0;
            RhoWitness w;
            try {
                w = minimal_nonvanishing_order(inst, params, eta);
            } catch (const OrderSearchExceeded&) {
                // The chosen kernel vector can make R vanish identically (it
                // happens when columns coincide). Any kernel vector is an
                // exact solution, so try the rest of the reduced basis,
                // injective-support vectors first (the Vandermonde argument
                // makes the scan terminate on those), then a solution of the
                // system restricted to representative columns, then the rest.
                std::vector<std::vector<NFElement>> inj, rest;
                for (const IntVec& v : sol.siegel_certificate.reduced_basis) {
                    IntVec flip(v.size());
                    for (size_t i = 0; i < v.size(); ++i) flip[i] = -v[i];
                    if (v == sol.siegel_certificate.flat || flip == sol.siegel_certificate.flat)
                        continue;
                    std::vector<NFElement> cand = detail_report::regroup_flat(F, params, v);
                    if (!detail_report::annihilates_exactly(F, M, cand)) continue;
                    bool good = detail_report::injective_on_support(inst, params, cand);
                    (good ? inj : rest).push_back(std::move(cand));
                }
                {
                    std::vector<NFElement> built =
                        detail_report::injective_support_solution(inst, params, M);
                    if (!built.empty()) inj.push_back(std::move(built));
                }
                inj.insert(inj.end(), std::make_move_iterator(rest.begin()),
                           std::make_move_iterator(rest.end()));
                bool found = false;
                for (auto& cand : inj) {
                    ++retries;
                    try {
                        w = minimal_nonvanishing_order(inst, params, cand);
                        eta = std::move(cand);
                        substituted = true;
                        found = true;
                        break;
                    } catch (const OrderSearchExceeded&) {
                    }
                }
                if (!found) throw;
            }
            out.r = w.r;
            out.l0 = w.l0;
            {
                RInterval maxh(prec);
                for (const NFElement& e : eta) maxh = maxh.max_with(house(F, e).enclosure);
                RInterval maxh_log10 = log10_(maxh);
                bool hbound = substituted
                                  ? (cert_le(maxh_log10, sol.bound_log10) == Cert::holds)
                                  : sol.house_bound_ok;
                Json j;
                Json entries = Json::array();
                for (const NFElement& e : eta) entries.push_back(element_literal(e));
                j["entries"] = std::move(entries);
                j["max_house"] = iv_json(maxh);
                j["max_house_log10"] = iv_json(maxh_log10);
                j["bound_log10"] = iv_json(sol.bound_log10);
                j["bound_prelift_log10"] = iv_json(sol.bound_prelift_log10);
                j["house_bound_ok"] = hbound;
                j["substituted"] = substituted;
                j["order_scan_retries"] = retries;
                rep["eta"] = std::move(j);
            }
            rep["injectivity_on_support"] = detail_report::injective_on_support(inst, params, eta);
            {
                Json j;
                j["r"] = w.r;
                j["l0"] = w.l0;
                j["rho"] = element_literal(w.rho);
                j["norm_rho"] = rat_str(w.norm_rho);
                rep["order"] = std::move(j);
            }
            mark("norm_check");

            NormReport nr = norm_lower_bound_check(inst, params, w);
            {
                Json j;
                j["exponent"] = nr.exponent;
                j["norm_scaled"] = rat_str(nr.norm_scaled);
                j["scaled_ge_one"] = nr.scaled_ge_one;
                j["implied_lower"] = rat_str(nr.implied_lower);
                j["norm_rho_abs"] = rat_str(nr.norm_rho_abs);
                j["rho_ge_implied"] = nr.rho_ge_implied;
                rep["norm"] = std::move(j);
            }
            mark("house_rho");

            Eq6Report e6 = house_rho_upper_check(inst, params, w, T);
            {
                Json j;
                j["house_rho_log10"] = iv_json(e6.house_rho_log10);
                j["middle_log10"] = iv_json(e6.middle_log10);
                j["right_log10"] = iv_json(e6.right_log10);
                j["house_le_middle"] = cert_name(e6.house_le_middle);
                j["middle_le_right"] = cert_name(e6.middle_le_right);
                rep["eq6"] = std::move(j);
            }
            mark("bound_chain");

            BoundChainReport bc = bound_chain_report(inst, params, eta, w, T, prec);
            {
                Json j;
                j["r_vs_siegel"] = detail_report::comparison_json(bc.r_vs_siegel);
                j["r_vs_growth"] = detail_report::comparison_json(bc.r_vs_growth);
                j["min_separation"] = rat_str(bc.min_separation);
                j["required_separation"] = rat_str(bc.required_separation);
                j["separation_ok"] = bc.separation_ok;
                j["product_vs_c11"] = detail_report::comparison_json(bc.product_vs_c11);
                j["product_bound_derivation"] = bc.product_bound_derivation;
                j["s_vs_c12"] = detail_report::comparison_json(bc.s_vs_c12);
                j["rho_vs_c13"] = detail_report::comparison_json(bc.rho_vs_c13);
                j["rho_contour"] = cball_json(bc.rho_contour);
                rep["bound_chain"] = std::move(j);
            }

            bool eq7_overlap = true;
            if (inst.mode == GSMode::synthetic) {
                mark("eq7");
                Eq7Report e7 = validate_eq7_synthetic(inst, params, eta, w, prec);
                eq7_overlap = e7.overlap;
                Json j;
                j["exact_rho"] = cball_json(e7.exact_rho);
                j["integral_rho"] = cball_json(e7.integral_rho);
                j["overlap"] = e7.overlap;
                j["width_exact"] = e7.width_exact;
                j["width_integral"] = e7.width_integral;
                j["width_combined"] = e7.width_combined;
                rep["eq7"] = std::move(j);
            }
            mark("threshold");

            ThresholdReport th = contradiction_threshold(T, params.h, params.m, params.n, prec);
            rep["threshold"] = threshold_to_json(th);
            mark("done");

            Json hard;
            hard["vanishing_exact"] = true;  // solve_coefficients and the retry verify or throw
            hard["rho_nonzero"] = true;      // the scan returns only exact nonzero sums
            hard["r_ge_n"] = (w.r >= params.n);
            hard["norm_lower_bound"] = (nr.scaled_ge_one && nr.rho_ge_implied);
            hard["siegel_certificate"] = sol.siegel_certificate.bound_satisfied;
            if (inst.mode == GSMode::synthetic) hard["eq7_overlap"] = eq7_overlap;
            bool ok = true;
            for (const auto& [k, v] : hard.items()) {
                (void)k;
                ok = ok && v.get<bool>();
            }
            rep["hard_assertions"] = std::move(hard);
            rep["ok"] = ok;
            rep["timings"] = std::move(timings);

            out.ok = ok;
            if (!ok) {
                out.failed_stage = "hard_assertions";
                out.failure_message = "one or more hard assertions are false";
            }
            out.report = std::move(rep);
            return out;
        } catch (const PrecisionExhausted& e) {
            if (prec * 2 > opts.max_precision) {
                out.ok = false;
                out.failed_stage = stage;
                out.failure_message = std::string("precision exhausted: ") + e.what();
                Json rep;
                rep["ok"] = false;
                rep["failed_stage"] = out.failed_stage;
                rep["error"] = out.failure_message;
                rep["precision_bits"] = static_cast<long>(prec);
                out.report = std::move(rep);
                return out;
            }
        } catch (const Error& e) {
            out.ok = false;
            out.failed_stage = stage;
            out.failure_message = e.what();
            Json rep;
            rep["ok"] = false;
            rep["failed_stage"] = out.failed_stage;
            rep["error"] = out.failure_message;
            rep["precision_bits"] = static_cast<long>(prec);
            out.report = std::move(rep);
            return out;
        }
    }
}

}  // namespace gsr
