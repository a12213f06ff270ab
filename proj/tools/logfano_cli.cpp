// Command-line front end: one subcommand per library operation, JSON/CSV out.
// Exit codes: 0 ok, 2 validation, 3 numeric domain, 4 convergence failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "logfano/json_io.hpp"
#include "logfano/selberg.hpp"
#include "logfano/toric.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using logfano::json;

constexpr const char* kVersion = "0.1.0";

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct Emitter {
    std::string subcommand;
    std::string out_path;
    std::vector<std::string> argv_echo;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void emit(const std::string& artifact) const {
        if (out_path.empty()) {
            std::cout << artifact;
            if (!artifact.empty() && artifact.back() != '\n') std::cout << "\n";
        } else {
            std::ofstream f(out_path);
            if (!f) throw logfano::ValidationError("cannot open output path " + out_path);
            f << artifact;
        }
        // Run manifest goes to stderr so artifacts stay byte-stable.
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        char sum[32];
        std::snprintf(sum, sizeof(sum), "fnv64:%016llx",
                      static_cast<unsigned long long>(fnv1a(artifact)));
        json manifest{{"subcommand", subcommand},
                      {"args", argv_echo},
                      {"version", kVersion},
                      {"wall_ms", ms},
                      {"output_checksum", sum},
                      {"output_path", out_path.empty() ? "-" : out_path}};
        std::cerr << "manifest " << manifest.dump() << "\n";
    }
};

std::vector<double> parse_doubles(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw logfano::ValidationError("empty numeric list '" + csv + "'");
    return out;
}

std::vector<long long> parse_longs(const std::string& csv) {
    std::vector<long long> out;
    for (double d : parse_doubles(csv)) out.push_back(static_cast<long long>(d));
    return out;
}

logfano::WeightTriple parse_triple(const std::string& csv) {
    auto v = parse_doubles(csv);
    if (v.size() != 3) throw logfano::ValidationError("--w expects three comma-separated weights");
    return {v[0], v[1], v[2]};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability thresholds, Selberg partition functions, toric rays and the "
                 "constrained sphere sampler for log Fano curves"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap OpenMP threads (default: library choice)");

    std::vector<std::string> argv_echo(argv + 1, argv + argc);

    // ---- classify ----
    auto* c_classify = app.add_subcommand("classify", "automorphisms, Futaki, K-class, Gibbs class");
    std::string classify_curve;
    std::string classify_out;
    c_classify->add_option("--curve", classify_curve, "curve JSON")->required();
    c_classify->add_option("--out", classify_out, "output path (default stdout)");

    // ---- thresholds ----
    auto* c_thresh = app.add_subcommand("thresholds", "gamma^(N) and the reduced variant");
    std::string thresh_curve, thresh_out;
    long long thresh_n = 0;
    bool thresh_reduced = false, thresh_oracle = false;
    c_thresh->add_option("--curve", thresh_curve, "curve JSON")->required();
    c_thresh->add_option("--n", thresh_n, "number of points N >= 2")->required();
    c_thresh->add_flag("--reduced", thresh_reduced, "restrict to the GIT-semistable locus");
    c_thresh->add_flag("--oracle", thresh_oracle, "use the valuation-enumeration route");
    c_thresh->add_option("--out", thresh_out, "output path");

    // ---- semistable ----
    auto* c_semi = app.add_subcommand("semistable", "GIT semistability of a configuration");
    std::string semi_config, semi_group = "pgl2", semi_out;
    c_semi->add_option("--config", semi_config, "configuration JSON")->required();
    c_semi->add_option("--group", semi_group, "pgl2 or cstar");
    c_semi->add_option("--out", semi_out, "output path");

    // ---- hypersimplex ----
    auto* c_hyper = app.add_subcommand("hypersimplex", "vertices of the half-sum slice");
    int hyper_n = 0;
    std::string hyper_out;
    c_hyper->add_option("--n", hyper_n, "odd N in [3,9]")->required();
    c_hyper->add_option("--out", hyper_out, "output path");

    // ---- selberg ----
    auto* c_sel = app.add_subcommand("selberg", "log Z via the Gamma-product formula");
    std::string sel_w, sel_out;
    long long sel_n = 0, sel_mc = 0;
    uint64_t sel_seed = 1;
    c_sel->add_option("--w", sel_w, "w1,w2,w3")->required();
    c_sel->add_option("--n", sel_n, "N >= 1")->required();
    c_sel->add_option("--mc", sel_mc, "also run the Monte Carlo oracle with this many samples");
    c_sel->add_option("--seed", sel_seed, "oracle seed");
    c_sel->add_option("--out", sel_out, "output path");

    // ---- mabuchi-inf ----
    auto* c_mab = app.add_subcommand("mabuchi-inf", "the large-N limit value");
    std::string mab_w, mab_out;
    c_mab->add_option("--w", mab_w, "w1,w2,w3")->required();
    c_mab->add_option("--out", mab_out, "output path");

    // ---- converge ----
    auto* c_conv = app.add_subcommand("converge", "convergence table toward the limit value");
    std::string conv_sched = "symmetric", conv_w = "0,0,0", conv_ns, conv_out;
    c_conv->add_option("--schedule", conv_sched, "symmetric or fixed");
    c_conv->add_option("--w", conv_w, "fixed-schedule weights w1,w2,w3");
    c_conv->add_option("--n", conv_ns, "comma-separated N list")->required();
    c_conv->add_option("--out", conv_out, "output path (CSV)");

    // ---- arith-z ----
    auto* c_arith = app.add_subcommand("arith-z", "arithmetic Gamma-product values");
    std::string arith_model = "p1z", arith_out;
    long long arith_n = 0;
    double arith_w = 0.0;
    c_arith->add_option("--n", arith_n, "N")->required();
    c_arith->add_option("--model", arith_model, "p1z or p1z-dw");
    c_arith->add_option("--w", arith_w, "weight for p1z-dw");
    c_arith->add_option("--out", arith_out, "output path");

    // ---- toric-ray ----
    auto* c_ray = app.add_subcommand("toric-ray", "functionals along a destabilizing ray");
    std::string ray_kind = "absval", ray_ts, ray_out;
    double ray_gamma = 2.0, ray_v = 2.0;
    c_ray->add_option("--ray", ray_kind, "absval or translation");
    c_ray->add_option("--gamma", ray_gamma, "twist parameter > 0")->required();
    c_ray->add_option("--v", ray_v, "volume V > 0");
    c_ray->add_option("--t", ray_ts, "increasing t list")->required();
    c_ray->add_option("--out", ray_out, "output path (CSV)");

    // ---- ding-ray ----
    auto* c_ding = app.add_subcommand("ding-ray", "the explicit piecewise-linear Ding ray");
    std::string ding_ts, ding_out;
    double ding_gamma = 2.0;
    c_ding->add_option("--gamma", ding_gamma, "gamma > 1")->required();
    c_ding->add_option("--t", ding_ts, "increasing t list")->required();
    c_ding->add_option("--out", ding_out, "output path (CSV)");

    // ---- sample ----
    auto* c_sample = app.add_subcommand("sample", "constrained Metropolis chain on the sphere");
    logfano::SamplerParams sp;
    std::string sample_out, sample_eps = "auto";
    double sample_steps = 100000, sample_burn = 10000;
    c_sample->add_option("--n", sp.N, "number of points")->required();
    c_sample->add_option("--beta", sp.beta, "inverse temperature")->required();
    c_sample->add_option("--w", sp.w, "pole weight in [0,1)");
    c_sample->add_option("--steps", sample_steps, "post-burn-in steps");
    c_sample->add_option("--burnin", sample_burn, "burn-in steps");
    c_sample->add_option("--eps", sample_eps, "slab half-width or 'auto'");
    c_sample->add_option("--sigma", sp.step_sigma, "proposal scale (default: auto-tune)");
    c_sample->add_option("--seed", sp.seed, "RNG seed");
    c_sample->add_option("--out", sample_out, "output path (JSON)");

    // ---- logz ----
    auto* c_logz = app.add_subcommand("logz", "partition function by thermodynamic integration");
    logfano::SamplerParams zp;
    std::string logz_out, logz_eps = "auto", logz_method = "ti";
    int logz_grid = 11;
    double logz_steps = 100000, logz_burn = 20000;
    long long logz_samples = 2000000;
    c_logz->add_option("--n", zp.N, "number of points")->required();
    c_logz->add_option("--beta", zp.beta, "target inverse temperature")->required();
    c_logz->add_option("--w", zp.w, "pole weight in [0,1)");
    c_logz->add_option("--grid", logz_grid, "number of beta grid points from 0");
    c_logz->add_option("--steps", logz_steps, "chain steps per grid point");
    c_logz->add_option("--burnin", logz_burn, "burn-in per grid point");
    c_logz->add_option("--eps", logz_eps, "slab half-width or 'auto'");
    c_logz->add_option("--seed", zp.seed, "RNG seed");
    c_logz->add_option("--samples", logz_samples, "samples for the beta=0 hit rate / direct MC");
    c_logz->add_option("--method", logz_method, "ti or direct");
    c_logz->add_option("--out", logz_out, "output path (JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        json err{{"error", {{"kind", "validation"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

#ifdef _OPENMP
    if (const char* env = std::getenv("LOGFANO_THREADS"); env && threads == 0)
        threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
#endif

    Emitter em;
    em.argv_echo = argv_echo;

    try {
        if (*c_classify) {
            em.subcommand = "classify";
            em.out_path = classify_out;
            auto curve = logfano::curve_from_json(json::parse(classify_curve));
            json out;
            out["curve"] = logfano::curve_to_json(curve);
            out["classification"] = logfano::classification_to_json(logfano::classify(curve));
            out["gibbs"] = logfano::gibbs_to_json(logfano::gibbs_classify(curve));
            if (curve.m() != 1)
                out["asymptotic"] = logfano::asymptotic_to_json(logfano::asymptotic_thresholds(curve));
            em.emit(out.dump(2));
        } else if (*c_thresh) {
            em.subcommand = "thresholds";
            em.out_path = thresh_out;
            auto curve = logfano::curve_from_json(json::parse(thresh_curve));
            json out;
            if (thresh_oracle) {
                out = logfano::threshold_report_to_json(
                    logfano::lct_oracle(curve, thresh_n, thresh_reduced));
            } else if (thresh_reduced) {
                logfano::ThresholdReport r;
                r.value = logfano::gamma_n_reduced(curve, thresh_n);
                out = logfano::threshold_report_to_json(r);
            } else {
                logfano::ThresholdReport r;
                r.value = logfano::RationalOrInf(logfano::gamma_n(curve, thresh_n));
                out = logfano::threshold_report_to_json(r);
            }
            em.emit(out.dump(2));
        } else if (*c_semi) {
            em.subcommand = "semistable";
            em.out_path = semi_out;
            auto cfg = logfano::config_from_json(json::parse(semi_config));
            logfano::GitGroup g;
            if (semi_group == "pgl2")
                g = logfano::GitGroup::PGL2;
            else if (semi_group == "cstar")
                g = logfano::GitGroup::CStar;
            else
                throw logfano::ValidationError("--group must be pgl2 or cstar");
            em.emit(json{{"semistable", logfano::is_semistable(cfg, g)}}.dump(2));
        } else if (*c_hyper) {
            em.subcommand = "hypersimplex";
            em.out_path = hyper_out;
            auto verts = logfano::hypersimplex_vertices(hyper_n);
            json jv = json::array();
            for (const auto& v : verts) {
                json row = json::array();
                for (const auto& c : v) row.push_back(c.str());
                jv.push_back(row);
            }
            em.emit(json{{"n", hyper_n},
                         {"count", verts.size()},
                         {"distortion_extremum", logfano::distortion_extremum(hyper_n).str()},
                         {"vertices", jv}}
                        .dump(2));
        } else if (*c_sel) {
            em.subcommand = "selberg";
            em.out_path = sel_out;
            auto w = parse_triple(sel_w);
            double lz = logfano::selberg_logZ(w, sel_n);
            json out{{"w", {w.w1, w.w2, w.w3}}, {"N", sel_n}, {"logZ", lz},
                     {"logZ_over_N", lz / static_cast<double>(sel_n)}};
            if (sel_mc > 0) {
                auto est = logfano::mc_oracle(w, static_cast<int>(sel_n), sel_mc, sel_seed);
                out["mc"] = {{"estimate_logZ", est.estimate_logZ},
                             {"stderr_log", est.stderr_log},
                             {"samples", est.samples},
                             {"seed", sel_seed}};
            }
            em.emit(out.dump(2));
        } else if (*c_mab) {
            em.subcommand = "mabuchi-inf";
            em.out_path = mab_out;
            auto w = parse_triple(mab_w);
            em.emit(json{{"w", {w.w1, w.w2, w.w3}}, {"value", logfano::inf_mabuchi(w)}}.dump(2));
        } else if (*c_conv) {
            em.subcommand = "converge";
            em.out_path = conv_out;
            logfano::Schedule sched;
            if (conv_sched == "symmetric")
                sched = logfano::Schedule::SymmetricWN;
            else if (conv_sched == "fixed")
                sched = logfano::Schedule::FixedW;
            else
                throw logfano::ValidationError("--schedule must be symmetric or fixed");
            auto rows = logfano::convergence_run(sched, parse_triple(conv_w), parse_longs(conv_ns));
            std::string csv = "N,logZ_over_N,target,error\n";
            for (const auto& r : rows)
                csv += std::to_string(r.N) + "," + fmt(r.logZ_over_N) + "," + fmt(r.target) + "," +
                       fmt(r.error) + "\n";
            em.emit(csv);
        } else if (*c_arith) {
            em.subcommand = "arith-z";
            em.out_path = arith_out;
            logfano::ArithmeticModel model;
            if (arith_model == "p1z")
                model = logfano::ArithmeticModel::P1Z;
            else if (arith_model == "p1z-dw")
                model = logfano::ArithmeticModel::P1ZDw;
            else
                throw logfano::ValidationError("--model must be p1z or p1z-dw");
            em.emit(json{{"N", arith_n},
                         {"model", arith_model},
                         {"w", arith_w},
                         {"logZ", logfano::arithmetic_logZ(arith_n, model, arith_w)}}
                        .dump(2));
        } else if (*c_ray) {
            em.subcommand = "toric-ray";
            em.out_path = ray_out;
            logfano::RayKind kind;
            if (ray_kind == "absval")
                kind = logfano::RayKind::AbsVal;
            else if (ray_kind == "translation")
                kind = logfano::RayKind::Translation;
            else
                throw logfano::ValidationError("--ray must be absval or translation");
            auto rep = logfano::ray_slopes(kind, ray_gamma, ray_v, parse_doubles(ray_ts));
            std::string csv = "t,E,D,F,Ding\n";
            for (const auto& s : rep.samples)
                csv += fmt(s.t) + "," + fmt(s.E) + "," + fmt(s.D) + "," + fmt(s.F) + "," +
                       fmt(s.Ding) + "\n";
            csv += "# slope,E," + fmt(rep.E.fitted) + "," + fmt(rep.E.theory) + "\n";
            csv += "# slope,D," + fmt(rep.D.fitted) + "," + fmt(rep.D.theory) + "\n";
            csv += "# slope,F," + fmt(rep.F.fitted) + "," + fmt(rep.F.theory) + "\n";
            em.emit(csv);
        } else if (*c_ding) {
            em.subcommand = "ding-ray";
            em.out_path = ding_out;
            auto rep = logfano::ding_ray(ding_gamma, parse_doubles(ding_ts));
            std::string csv = "t,Ding\n";
            for (const auto& s : rep.samples) csv += fmt(s.t) + "," + fmt(s.Ding) + "\n";
            csv += "# slope,Ding," + fmt(rep.Ding.fitted) + "," + fmt(rep.Ding.theory) + "\n";
            em.emit(csv);
        } else if (*c_sample) {
            em.subcommand = "sample";
            em.out_path = sample_out;
            sp.n_steps = static_cast<long long>(sample_steps);
            sp.burn_in = static_cast<long long>(sample_burn);
            if (sample_eps != "auto") sp.eps = std::stod(sample_eps);
            auto res = logfano::run_chain(sp);
            json out;
            out["params"] = {{"N", sp.N},       {"beta", sp.beta},
                             {"w", sp.w},       {"eps", sp.eps_effective()},
                             {"steps", sp.n_steps}, {"burn_in", sp.burn_in},
                             {"seed", sp.seed}, {"tuned_sigma", res.tuned_sigma}};
            out["observables"] = logfano::observables_to_json(res.obs);
            out["bootstrap_se"] = {
                {"mean_energy", logfano::bootstrap_se(res.batches.energy)}};
            em.emit(out.dump(2));
        } else if (*c_logz) {
            em.subcommand = "logz";
            em.out_path = logz_out;
            zp.n_steps = static_cast<long long>(logz_steps);
            zp.burn_in = static_cast<long long>(logz_burn);
            if (logz_eps != "auto") zp.eps = std::stod(logz_eps);
            json out;
            out["params"] = {{"N", zp.N},   {"beta", zp.beta}, {"w", zp.w},
                             {"eps", zp.eps_effective()}, {"seed", zp.seed},
                             {"method", logz_method}};
            if (logz_method == "ti") {
                if (logz_grid < 2) throw logfano::ValidationError("--grid needs >= 2 points");
                std::vector<double> grid;
                for (int g = 0; g < logz_grid; ++g)
                    grid.push_back(zp.beta * g / (logz_grid - 1));
                auto est = logfano::estimate_logZ(zp, grid, logz_samples);
                out["logZ"] = est.logZ;
                out["stderr"] = est.stderr_;
                out["z0_log"] = est.z0_log;
                out["z0_hit_rate"] = est.z0_hit_rate;
            } else if (logz_method == "direct") {
                auto est = logfano::direct_mc_logZ(zp.N, zp.w, zp.beta, zp.eps_effective(),
                                                   logz_samples, zp.seed);
                out["logZ"] = est.logZ;
                out["stderr"] = est.stderr_;
                out["samples"] = est.samples;
            } else {
                throw logfano::ValidationError("--method must be ti or direct");
            }
            em.emit(out.dump(2));
        }
    } catch (const logfano::ValidationError& e) {
        std::cerr << json{{"error", {{"kind", "validation"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const logfano::NumericDomainError& e) {
        std::cerr << json{{"error", {{"kind", "numeric-domain"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 3;
    } catch (const logfano::ConvergenceError& e) {
        std::cerr << json{{"error", {{"kind", "convergence"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 4;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", {{"kind", "validation"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", {{"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
    return 0;
}
