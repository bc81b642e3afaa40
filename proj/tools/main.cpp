#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "intpts/json_io.hpp"
#include "intpts/pipeline.hpp"

namespace {

using namespace intpts;

struct GlobalOpts {
    std::string out;
    std::string csv;
    int jobs = 1;
    std::uint64_t seed = 0;
    int prec = 80;
    bool timings = false;
};

void emit(const GlobalOpts& g, const json& payload, const std::string& csv_text = {}) {
    std::string text = payload.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        f << text;
    }
    if (!g.csv.empty() && !csv_text.empty()) {
        std::ofstream f(g.csv);
        f << csv_text;
    }
}

json wrap(const RunManifest& m, json report) {
    return json{{"manifest", manifest_to_json(m)}, {"report", std::move(report)}};
}

RunManifest make_manifest(const std::string& sub, json config, const std::string& inputs) {
    RunManifest m;
    m.subcommand = sub;
    m.config = std::move(config);
    m.input_digest = fnv1a_hex(inputs);
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integral points on elliptic curves: enumeration, heights, sieve bounds"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    GlobalOpts g;
    app.add_option("--out", g.out, "write the JSON report to this file instead of stdout");
    app.add_option("--csv", g.csv, "also write a CSV table where the subcommand has one");
    app.add_option("--jobs", g.jobs, "worker pool size for data-parallel scans")->default_val(1);
    app.add_option("--seed", g.seed, "seed for pseudorandom samples")->default_val(0);
    app.add_option("--prec", g.prec, "minimum working precision in mantissa bits (53 or 64)")
        ->default_val(64);
    app.add_flag("--timings", g.timings, "include wall-clock timings in reports");

    std::string curve_s, box_s, point_s, interval_s, surface_s, check_id, jval_s;
    long long Nval = 1000;
    double delta = 0.01, kparam = 4.5, eps = -1;
    bool exact_alpha = false, all_checks = false;
    std::string method = "brute";
    int tau_per_arc = 200;

    auto* c_enum = app.add_subcommand("enumerate", "integral points of a curve in a box");
    c_enum->add_option("--curve", curve_s, "curve JSON")->required();
    c_enum->add_option("--box", box_s, "box JSON or [xlo,xhi,ylo,yhi]")->required();
    c_enum->add_option("--method", method, "brute|sieve|pipeline")->default_val("brute");
    c_enum->add_option("--eps", eps, "epsilon for the pipeline method");

    auto* c_height = app.add_subcommand("height", "canonical height decomposition of a point");
    c_height->add_option("--curve", curve_s, "curve JSON (short form)")->required();
    c_height->add_option("--point", point_s, "point JSON [x,y]")->required();

    auto* c_tau = app.add_subcommand("tau", "tau in the real-j fundamental set with j(E_tau) = j");
    c_tau->add_option("--j", jval_s, "target real j-invariant")->required();

    auto* c_sieve = app.add_subcommand("sieve-bound", "large-sieve certificate over an x-interval");
    c_sieve->add_option("--curve", curve_s, "curve JSON (short form)")->required();
    c_sieve->add_option("--interval", interval_s, "[lo,hi]")->required();
    c_sieve->add_flag("--exact-alpha", exact_alpha, "measure alpha_p instead of the 3/4 default");

    auto* c_pipe = app.add_subcommand("pipeline", "origin-box counting pipeline");
    c_pipe->add_option("--curve", curve_s, "curve JSON (long form, a1 = 0)")->required();
    c_pipe->add_option("--N", Nval, "box half-width")->required();
    c_pipe->add_option("--delta", delta)->default_val(0.01);
    c_pipe->add_option("--k", kparam)->default_val(4.5);
    c_pipe->add_option("--eps", eps, "override eps (default delta/k)");

    auto* c_verify = app.add_subcommand("verify", "numerical checks of the printed constants");
    c_verify->add_option("--check", check_id, "check id (L4, COR1, L5, L3, JW, UB, L6, L7, L8, P1, L13)");
    c_verify->add_flag("--all", all_checks, "run every check");
    c_verify->add_option("--tau-per-arc", tau_per_arc)->default_val(200);

    auto* c_dp = app.add_subcommand("delpezzo", "degree-1 del Pezzo fiberwise point count");
    c_dp->add_option("--surface", surface_s, "surface JSON {\"F4\":[..5],\"F6\":[..7]}")->required();
    c_dp->add_option("--N", Nval, "height parameter")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }
    if (g.prec != 53 && g.prec != 64 && g.prec != 80) {
        std::cerr << "--prec must be 53, 64 or 80 (mantissa bits)\n";
        return 2;
    }

    try {
        if (*c_enum) {
            CurveSpecJson cs = curve_from_json(json::parse(curve_s));
            BoxSpec box = box_from_json(json::parse(box_s));
            RunManifest m = make_manifest(
                "enumerate", json{{"method", method}, {"jobs", g.jobs}, {"prec", g.prec}},
                curve_s + box_s + method);
            if (method == "brute") {
                EnumerateOptions eo;
                eo.jobs = g.jobs;
                CountReport rep = cs.is_short ? enumerate_box(cs.short_curve, box, eo)
                                              : enumerate_box(cs.long_curve, box, eo);
                emit(g, wrap(m, report_to_json(rep, g.timings)), points_to_csv(rep));
            } else if (method == "sieve") {
                if (!cs.is_short) throw UnsupportedForm("sieve method expects a short curve");
                CertifiedInterval ci =
                    sieve_certified_interval(cs.short_curve, box.x_lo, box.x_hi, exact_alpha);
                json rep{{"branch", "sieve-certificate"},
                         {"x_bound", (double)ci.bound},
                         {"point_bound", 2 * (double)ci.bound},
                         {"alpha_used", (double)ci.alpha_used},
                         {"prime_count", ci.prime_count},
                         {"trivial", ci.trivial},
                         {"notes", ci.notes}};
                emit(g, wrap(m, rep));
            } else if (method == "pipeline") {
                if (!cs.is_short) throw UnsupportedForm("pipeline method expects a short curve");
                PipelineOptions po;
                po.jobs = g.jobs;
                CountReport rep = arbitrary_box_pipeline(cs.short_curve, box,
                                                         eps > 0 ? (Real)eps : 0.01L, po);
                emit(g, wrap(m, report_to_json(rep, g.timings)), points_to_csv(rep));
            } else {
                throw DomainError("unknown method: " + method);
            }
        } else if (*c_height) {
            CurveSpecJson cs = curve_from_json(json::parse(curve_s));
            if (!cs.is_short) throw UnsupportedForm("height expects a short curve");
            RationalPoint P = point_from_json(json::parse(point_s));
            SeriesControl ctl;
            HeightBreakdown hb = canonical_height_decomposed(cs.short_curve, P, ctl);
            RunManifest m = make_manifest("height", json{{"prec", g.prec}}, curve_s + point_s);
            emit(g, wrap(m, report_to_json(hb)));
        } else if (*c_tau) {
            SeriesControl ctl;
            Real jv = std::strtold(jval_s.c_str(), nullptr);
            AssociateResult ar = associate_tau(jv, ctl);
            RunManifest m = make_manifest("tau", json{{"prec", g.prec}}, jval_s);
            emit(g, wrap(m, tau_to_json(ar.tau, ar.residual)));
        } else if (*c_sieve) {
            CurveSpecJson cs = curve_from_json(json::parse(curve_s));
            if (!cs.is_short) throw UnsupportedForm("sieve-bound expects a short curve");
            json iv = json::parse(interval_s);
            if (!iv.is_array() || iv.size() != 2) throw DomainError("interval: [lo,hi]");
            Int lo(iv[0].is_string() ? Int(iv[0].get<std::string>()) : Int((long)iv[0].get<long long>()));
            Int hi(iv[1].is_string() ? Int(iv[1].get<std::string>()) : Int((long)iv[1].get<long long>()));
            CertifiedInterval ci = sieve_certified_interval(cs.short_curve, lo, hi, exact_alpha);
            RunManifest m = make_manifest("sieve-bound",
                                          json{{"exact_alpha", exact_alpha}}, curve_s + interval_s);
            json rep{{"x_bound", (double)ci.bound},
                     {"point_bound", 2 * (double)ci.bound},
                     {"alpha_used", (double)ci.alpha_used},
                     {"prime_count", ci.prime_count},
                     {"trivial", ci.trivial},
                     {"notes", ci.notes}};
            emit(g, wrap(m, rep));
        } else if (*c_pipe) {
            CurveSpecJson cs = curve_from_json(json::parse(curve_s));
            PipelineOptions po;
            po.delta = (Real)delta;
            po.k = (Real)kparam;
            po.eps = (Real)eps;
            po.jobs = g.jobs;
            CountReport rep = origin_box_pipeline(cs.as_long(), Int((long)Nval), po);
            RunManifest m = make_manifest(
                "pipeline", json{{"N", Nval}, {"delta", delta}, {"k", kparam}, {"eps", eps}},
                curve_s + std::to_string(Nval));
            emit(g, wrap(m, report_to_json(rep, g.timings)), points_to_csv(rep));
        } else if (*c_verify) {
            GridSpec grid;
            grid.tau_per_arc = tau_per_arc;
            grid.jobs = g.jobs;
            std::vector<VerificationReport> reports;
            if (all_checks) {
                for (const std::string& id : bounds_check_ids()) reports.push_back(run_check(id, grid));
            } else if (check_id == "L13") {
                reports.push_back(verify_slope_exponent_inequality(30, Int(1000), 0.1L, 0.05L, 1.0L, g.seed));
            } else if (!check_id.empty()) {
                reports.push_back(run_check(check_id, grid));
            } else {
                throw DomainError("verify: --check ID or --all required");
            }
            json arr = json::array();
            bool all_ok = true;
            for (const VerificationReport& r : reports) {
                arr.push_back(report_to_json(r));
                all_ok = all_ok && r.passed;
                std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.check_id
                          << "  worst=" << (double)r.worst_case
                          << "  threshold=" << (double)r.threshold << "\n";
            }
            RunManifest m = make_manifest("verify", json{{"grid", grid.describe()}},
                                          check_id + (all_checks ? "all" : ""));
            emit(g, wrap(m, arr), verification_to_csv(reports));
            if (!all_ok) return 3;
        } else if (*c_dp) {
            DP1Surface s = surface_from_json(json::parse(surface_s));
            DPCountReport rep = count_S_N(s, Int((long)Nval), g.jobs);
            RunManifest m = make_manifest("delpezzo", json{{"N", Nval}, {"jobs", g.jobs}},
                                          surface_s + std::to_string(Nval));
            emit(g, wrap(m, report_to_json(rep, g.timings)), fibers_to_csv(rep));
        }
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UnsupportedForm& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const BoxTooLarge& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const BadReduction& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const DegenerateSieve& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const SingularCurve& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
