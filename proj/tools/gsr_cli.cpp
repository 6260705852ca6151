// Command-line driver: field/element utilities, Siegel solvers, the
// end-to-end pipeline, constants, and the contradiction threshold.
// JSON on stdout, human summary on stderr. Exit 0 on success, 1 when a hard
// assertion fails (the failing stage is named), 2 on usage errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gsr/report.hpp"

using namespace gsr;

namespace {

constexpr mpfr_prec_t kMaxPrecision = 1024;

Json load_json_file(const std::string& path, std::string& err) {
    std::ifstream in(path);
    if (!in) {
        err = "cannot open " + path;
        return Json();
    }
    return Json::parse(in);
}

void emit(const Json& j, const std::string& summary, bool json_only) {
    std::cout << j.dump(2) << "\n";
    if (!json_only && !summary.empty()) std::cerr << summary << "\n";
}

double width_upper(const RInterval& iv) {
    MF w = iv.width();
    return mf_to_double(w, MPFR_RNDU);
}

std::string iv_str(const RInterval& iv) {
    Json j = iv_json(iv);
    std::ostringstream os;
    os << j["mid"].get<double>() << " +/- " << j["rad"].get<double>();
    return os.str();
}

std::string qpoly_str(const QPoly& p) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.c.size(); i-- > 0;) {
        BigRat c = p.c[i];
        if (c == 0 && p.c.size() > 1) continue;
        bool neg = c < 0;
        BigRat ac = abs(c);
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (i == 0 || ac != 1) os << ac.get_str();
        if (i > 0) {
            if (ac != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

mpfr_prec_t start_precision(const Json& instance, bool precision_set, long precision) {
    if (precision_set) return static_cast<mpfr_prec_t>(precision);
    if (instance.contains("field") && instance["field"].is_object() &&
        instance["field"].contains("precision_bits"))
        return static_cast<mpfr_prec_t>(instance["field"]["precision_bits"].get<long>());
    return 128;
}

std::string pipeline_summary(const PipelineOutcome& out) {
    std::ostringstream os;
    if (!out.report.contains("params")) {
        os << "pipeline failed at stage '" << out.failed_stage << "': " << out.failure_message;
        return os.str();
    }
    const Json& rep = out.report;
    os << "mode " << rep["mode"].get<std::string>() << ", params h=" << rep["params"]["h"]
       << " m=" << rep["params"]["m"] << " n=" << rep["params"]["n"] << " q=" << rep["params"]["q"]
       << " t=" << rep["params"]["t"] << ", precision " << rep["precision_bits"] << " bits\n";
    if (rep.contains("order"))
        os << "minimal nonvanishing order r=" << rep["order"]["r"] << " at l0=" << rep["order"]["l0"]
           << ", |N(rho)| = " << rep["norm"]["norm_rho_abs"].get<std::string>() << "\n";
    if (rep.contains("hard_assertions")) {
        os << "hard assertions:";
        for (const auto& [k, v] : rep["hard_assertions"].items())
            os << " " << k << "=" << (v.get<bool>() ? "ok" : "FAIL");
        os << "\n";
    }
    os << (out.ok ? "pipeline: ok" : "pipeline: FAILED (" + out.failed_stage + ")");
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"number-field toolkit: houses, Siegel solvers, auxiliary-function pipeline"};
    app.require_subcommand(1);

    std::string instance_path, field_json, elem_literal, matrix_json, mode_str;
    long precision = 0;
    long q = 0;
    double target_width = -1.0;
    bool json_only = false;

    auto add_precision = [&](CLI::App* sub) {
        sub->add_option("--precision", precision, "working precision in bits");
        sub->add_flag("--json-only", json_only, "suppress the human summary on stderr");
    };

    CLI::App* cHouse = app.add_subcommand("house", "enclosure of the house of an element");
    cHouse->add_option("--field", field_json, "field descriptor JSON")->required();
    cHouse->add_option("--elem", elem_literal, "element literal")->required();
    cHouse->add_option("--target-width", target_width, "refine until the enclosure is this wide");
    add_precision(cHouse);

    CLI::App* cMinpoly = app.add_subcommand("minpoly", "monic minimal polynomial of an element");
    cMinpoly->add_option("--field", field_json, "field descriptor JSON")->required();
    cMinpoly->add_option("--elem", elem_literal, "element literal")->required();
    add_precision(cMinpoly);

    CLI::App* cNorm = app.add_subcommand("norm", "exact field norm and trace of an element");
    cNorm->add_option("--field", field_json, "field descriptor JSON")->required();
    cNorm->add_option("--elem", elem_literal, "element literal")->required();
    add_precision(cNorm);

    CLI::App* cSiegel = app.add_subcommand("siegel", "small kernel vector with pigeonhole bound");
    cSiegel->add_option("--matrix", matrix_json, "matrix JSON, field \"Q\" or a descriptor")
        ->required();
    add_precision(cSiegel);

    CLI::App* cPipeline = app.add_subcommand("pipeline", "end-to-end run with JSON report");
    cPipeline->add_option("--instance", instance_path, "instance file")->required();
    cPipeline->add_option("--q", q, "override the instance's q");
    cPipeline->add_option("--mode", mode_str, "override the instance's mode")
        ->check(CLI::IsMember({"gelfond", "synthetic"}));
    cPipeline->add_option("--target-width", target_width, "width goal for integral validation");
    add_precision(cPipeline);

    CLI::App* cSynth = app.add_subcommand("synthetic-validate",
                                          "pipeline in synthetic mode with integral cross-check");
    cSynth->add_option("--instance", instance_path, "instance file")->required();
    cSynth->add_option("--q", q, "override the instance's q");
    cSynth->add_option("--target-width", target_width, "width goal for integral validation");
    add_precision(cSynth);

    CLI::App* cConstants = app.add_subcommand("constants", "constants table for an instance");
    cConstants->add_option("--instance", instance_path, "instance file")->required();
    cConstants->add_option("--q", q, "override the instance's q");
    add_precision(cConstants);

    CLI::App* cThreshold = app.add_subcommand("threshold", "contradiction threshold r*");
    cThreshold->add_option("--instance", instance_path, "instance file")->required();
    cThreshold->add_option("--q", q, "override the instance's q");
    add_precision(cThreshold);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    std::string stage = "load";
    try {
        std::optional<mpfr_prec_t> prec_opt;
        if (precision > 0) prec_opt = static_cast<mpfr_prec_t>(precision);

        if (cHouse->parsed()) {
            stage = "house";
            Json fj = Json::parse(field_json);
            mpfr_prec_t p = start_precision(Json{{"field", fj}}, precision > 0, precision);
            NumberField F = field_from_json(fj, p);
            NFElement e = parse_element_literal(F, elem_literal);
            HouseValue hv = house(F, e);
            while (target_width > 0 && width_upper(hv.enclosure) > target_width &&
                   p * 2 <= kMaxPrecision) {
                p *= 2;
                F = field_from_json(fj, p);
                e = parse_element_literal(F, elem_literal);
                hv = house(F, e);
            }
            double w = width_upper(hv.enclosure);
            Json out;
            out["element"] = element_literal(e);
            out["house"] = iv_json(hv.enclosure);
            out["width"] = w;
            out["precision_bits"] = static_cast<long>(p);
            out["width_ok"] = (target_width <= 0 || w <= target_width);
            emit(out, "house(" + element_literal(e) + ") = " + iv_str(hv.enclosure), json_only);
            return 0;
        }

        if (cMinpoly->parsed()) {
            stage = "minpoly";
            NumberField F = field_from_json(Json::parse(field_json), prec_opt);
            NFElement e = parse_element_literal(F, elem_literal);
            QPoly mp = minpoly(F, e);
            Json out;
            out["element"] = element_literal(e);
            Json coeffs = Json::array();
            for (const BigRat& c : mp.c) coeffs.push_back(rat_str(c));
            out["coeffs"] = std::move(coeffs);
            out["degree"] = mp.c.size() - 1;
            emit(out, "minpoly(" + element_literal(e) + ") = " + qpoly_str(mp), json_only);
            return 0;
        }

        if (cNorm->parsed()) {
            stage = "norm";
            NumberField F = field_from_json(Json::parse(field_json), prec_opt);
            NFElement e = parse_element_literal(F, elem_literal);
            BigRat N = norm(F, e), Tr = trace(F, e);
            Json out;
            out["element"] = element_literal(e);
            out["norm"] = rat_str(N);
            out["trace"] = rat_str(Tr);
            out["is_integral"] = is_integral(F, e);
            emit(out, "N = " + rat_str(N) + ", Tr = " + rat_str(Tr), json_only);
            return 0;
        }

        if (cSiegel->parsed()) {
            stage = "siegel";
            ParsedMatrix pm = matrix_from_json(Json::parse(matrix_json), prec_opt);
            Json out;
            out["matrix"] = pm.echo;
            bool satisfied = false;
            std::string summary;
            if (pm.over_Q) {
                SiegelSolution s = siegel_int(pm.zmat);
                if (!is_zero_vec(mat_vec(pm.zmat, s.vector)) || is_zero_vec(s.vector))
                    throw Error("siegel: solution fails exact annihilation");
                Json sol = Json::array();
                for (const BigInt& v : s.vector) sol.push_back(int_str(v));
                out["solution"] = std::move(sol);
                out["sup_norm"] = int_str(sup_norm(s.vector));
                out["claimed_bound"] = iv_json(s.claimed_bound);
                out["achieved"] = iv_json(s.achieved);
                out["bound_satisfied"] = s.bound_satisfied;
                satisfied = s.bound_satisfied;
                summary = "solution sup-norm " + int_str(sup_norm(s.vector)) + ", bound " +
                          iv_str(s.claimed_bound);
            } else {
                const NumberField& F = *pm.field;
                SiegelSolutionOK s = siegel_OK(F, pm.nfmat);
                if (!detail_report::annihilates_exactly(F, pm.nfmat, s.vector))
                    throw Error("siegel: solution fails exact annihilation");
                Json sol = Json::array();
                for (const NFElement& v : s.vector) sol.push_back(element_literal(v));
                out["solution"] = std::move(sol);
                out["claimed_bound"] = iv_json(s.claimed_bound);
                out["achieved_house"] = iv_json(s.achieved);
                out["bound_satisfied"] = s.bound_satisfied;
                satisfied = s.bound_satisfied;
                summary = "solution house " + iv_str(s.achieved) + ", bound " +
                          iv_str(s.claimed_bound);
            }
            emit(out, summary, json_only);
            if (!satisfied) {
                std::cerr << "error at stage 'siegel': pigeonhole bound not certified\n";
                return 1;
            }
            return 0;
        }

        if (cPipeline->parsed() || cSynth->parsed()) {
            stage = "pipeline";
            std::string err;
            Json inst = load_json_file(instance_path, err);
            if (!err.empty()) {
                std::cerr << "usage error: " << err << "\n";
                return 2;
            }
            PipelineOptions opts;
            opts.precision = start_precision(inst, precision > 0, precision);
            opts.max_precision = std::max<mpfr_prec_t>(kMaxPrecision, opts.precision);
            opts.target_width = target_width;
            if (q > 0) opts.q_override = static_cast<size_t>(q);
            if (cSynth->parsed() || mode_str == "synthetic") opts.mode_override = GSMode::synthetic;
            else if (mode_str == "gelfond") opts.mode_override = GSMode::gelfond;
            PipelineOutcome out = run_pipeline(inst, opts);
            emit(out.report, pipeline_summary(out), json_only);
            if (!out.ok) {
                std::cerr << "error at stage '" << out.failed_stage << "': " << out.failure_message
                          << "\n";
                return 1;
            }
            return 0;
        }

        if (cConstants->parsed() || cThreshold->parsed()) {
            stage = cConstants->parsed() ? "constants" : "threshold";
            std::string err;
            Json inst = load_json_file(instance_path, err);
            if (!err.empty()) {
                std::cerr << "usage error: " << err << "\n";
                return 2;
            }
            mpfr_prec_t p = start_precision(inst, precision > 0, precision);
            std::optional<size_t> q_over;
            if (q > 0) q_over = static_cast<size_t>(q);
            LoadedInstance L = instance_from_json(inst, p, q_over, std::nullopt);
            ConstantsTable T = compute_constants(L.inst, L.params, p);
            if (cConstants->parsed()) {
                Json out = constants_to_json(T);
                emit(out, "constants computed at " + std::to_string(p) + " bits", json_only);
            } else {
                ThresholdReport th =
                    contradiction_threshold(T, L.params.h, L.params.m, L.params.n, p);
                Json out = threshold_to_json(th);
                std::string summary =
                    th.no_threshold ? "no contradiction threshold certified"
                                    : "r* = " + th.r_star.get_str() +
                                          (th.minimal_certified ? " (minimal)" : " (sound)");
                emit(out, summary, json_only);
            }
            return 0;
        }
    } catch (const Json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error at stage '" << stage << "': " << e.what() << "\n";
        return 1;
    }
    return 2;
}
