// Reproducible experiment driver for the nct library.
//
// Usage: nct run <experiment> [options]
// Experiments: frame-bounds dual-window tight-window janssen figa-check
//              wexler-raz invert-algebra decay-profile holo-calculus
//              radius-compare condition-a
//
// Every run writes report.json (plus experiment-specific CSVs) into --out.
// The same config and seed always produce byte-identical files; the thread
// count only changes wall time, never output.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "nct/nct.hpp"

namespace fs = std::filesystem;
using namespace nct;

namespace {

struct ExperimentConfig {
    std::string experiment;
    long L = 64;
    long a = 4;
    long b = 4;
    std::string window = "gaussian";
    double sigma = 1.0;
    std::vector<double> s_list{0.0, 2.0};
    std::vector<double> nu_list{-1.0, -0.5};
    long nodes = 256;
    std::uint64_t seed = 1;
    int threads = 1;
    std::string outdir;
};

Vec build_window(const ExperimentConfig& cfg) {
    WindowFamily fam;
    fam.L = cfg.L;
    fam.sigma = cfg.sigma;
    if (cfg.window == "gaussian") {
        fam.kind = WindowKind::gaussian;
    } else if (cfg.window == "hann") {
        fam.kind = WindowKind::hann;
    } else if (cfg.window == "point_mass") {
        fam.kind = WindowKind::point_mass;
    } else if (cfg.window.rfind("boxcar", 0) == 0) {
        fam.kind = WindowKind::boxcar;
        const std::string suffix = cfg.window.substr(6);
        fam.width = suffix.empty() ? 2 : std::stol(suffix);
    } else {
        throw ParameterError("unknown window kind: " + cfg.window);
    }
    return make_window(fam);
}

Report config_json(const ExperimentConfig& cfg) {
    Report j;
    j["L"] = cfg.L;
    j["a"] = cfg.a;
    j["b"] = cfg.b;
    j["window"] = cfg.window;
    j["sigma"] = cfg.sigma;
    j["s_list"] = cfg.s_list;
    j["nu_list"] = cfg.nu_list;
    j["nodes"] = cfg.nodes;
    j["seed"] = cfg.seed;
    return j;
}

// Coefficients of a lattice operator in the adjoint-lattice algebra; the
// natural home of frame operators (Janssen representation).
std::pair<TwistedSeq, LatticeSpec> operator_in_adjoint_algebra(const Mat& m,
                                                               const LatticeSpec& spec) {
    const AdjointLatticeSpec adj = adjoint_lattice(spec);
    const LatticeSpec adj_spec(spec.L, adj.astep, adj.bstep);
    return {coefficients_from_operator(m, adj_spec), adj_spec};
}

Report run_experiment(const ExperimentConfig& cfg, const fs::path& outdir) {
    const LatticeSpec spec(cfg.L, cfg.a, cfg.b);
    Report results;

    if (cfg.experiment == "frame-bounds") {
        const Vec g = build_window(cfg);
        const FrameBounds fb = frame_bounds(g, spec);
        results["A"] = fb.A;
        results["B"] = fb.B;
        results["cond"] = fb.cond();
        results["is_frame"] = fb.is_frame();
        results["redundancy"] = spec.redundancy();
    } else if (cfg.experiment == "dual-window" || cfg.experiment == "tight-window") {
        const bool tight = cfg.experiment == "tight-window";
        const double nu = tight ? -0.5 : -1.0;
        const Vec g = build_window(cfg);
        const Vec h = power_window(g, spec, nu);
        const Mat s = frame_operator_matrix(g, g, spec);
        results["nu"] = nu;
        if (tight) {
            const FrameBounds fb = frame_bounds(h, spec);
            results["A"] = fb.A;
            results["B"] = fb.B;
            results["parseval_deviation"] = std::max(std::abs(fb.A - 1.0), std::abs(fb.B - 1.0));
        } else {
            results["dual_residual"] = (s * h - g).norm();
            const WexlerRazReport wr = wexler_raz_check(g, h, spec);
            results["wexler_raz_deviation"] = wr.max_deviation;
        }
        write_file((outdir / "window.csv").string(), signal_csv(h));
    } else if (cfg.experiment == "janssen") {
        const Vec g = build_window(cfg);
        const Mat s = frame_operator_matrix(g, g, spec);
        const JanssenResult jr = janssen_coefficients(g, g, spec);
        results["rebuild_residual"] = (s - jr.rebuilt).norm();
        const DecayProfile prof = decay_profile(jr.coefficients);
        results["coefficient_decay"] = to_json(prof);
        results["coefficients"] = to_json(jr.coefficients);
        write_file((outdir / "decay.csv").string(), decay_profile_csv(prof));
    } else if (cfg.experiment == "figa-check") {
        Rng rng(cfg.seed);
        double max_residual = 0.0;
        double ratio_lo = std::numeric_limits<double>::infinity(), ratio_hi = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Vec f1 = rng.signal(cfg.L), f2 = rng.signal(cfg.L);
            const Vec g1 = rng.signal(cfg.L), g2 = rng.signal(cfg.L);
            max_residual = std::max(max_residual, figa_residual(f1, f2, g1, g2, spec));
            cplx lhs = 0.0, rhs = 0.0;
            for (const TFPoint& la : spec.points())
                lhs += inner(f1, tf_shift(g1, la)) * inner(tf_shift(g2, la), f2);
            for (const TFPoint& mu : adjoint_lattice(spec).points())
                rhs += inner(g2, tf_shift(g1, mu)) * inner(tf_shift(f1, mu), f2);
            const double ratio = std::abs(lhs) / std::abs(rhs);
            ratio_lo = std::min(ratio_lo, ratio);
            ratio_hi = std::max(ratio_hi, ratio);
        }
        results["max_residual"] = max_residual;
        results["calibration_ratio_min"] = ratio_lo;
        results["calibration_ratio_max"] = ratio_hi;
        results["expected_constant"] = spec.redundancy();
    } else if (cfg.experiment == "wexler-raz") {
        const Vec g = build_window(cfg);
        const Vec dual = power_window(g, spec, -1.0);
        results["dual_deviation"] = wexler_raz_check(g, dual, spec).max_deviation;
        results["negative_control_deviation"] = wexler_raz_check(g, g, spec).max_deviation;
    } else if (cfg.experiment == "invert-algebra" || cfg.experiment == "decay-profile") {
        const Vec g = build_window(cfg);
        const Mat s = frame_operator_matrix(g, g, spec);
        auto [a_s, adj_spec] = operator_in_adjoint_algebra(s, spec);
        const TwistedSeq b = invert_in_algebra(a_s, adj_spec);
        const TwistedSeq unit = TwistedSeq::unit(a_s.theta);
        const WeightSpec l1{0.0, 1.0, 1.0};
        results["left_certificate"] = weighted_norm(twisted_product(b, a_s) - unit, l1);
        results["right_certificate"] = weighted_norm(twisted_product(a_s, b) - unit, l1);
        const DecayProfile prof = decay_profile(b);
        results["inverse_decay"] = to_json(prof);
        write_file((outdir / "decay.csv").string(), decay_profile_csv(prof));
    } else if (cfg.experiment == "holo-calculus") {
        const Vec g = build_window(cfg);
        const Mat s = frame_operator_matrix(g, g, spec);
        const ContourSpec contour = default_contour(s, cfg.nodes);
        const Mat inv = riesz_dunford(s, HoloFn::inverse, contour);
        results["inverse_residual"] =
            (inv * s - Mat::Identity(cfg.L, cfg.L)).norm();
        const Mat isqrt = riesz_dunford(s, HoloFn::inverse_sqrt, contour);
        const Vec via_contour = isqrt * g;
        const Vec via_eigen = power_window(g, spec, -0.5);
        results["inverse_sqrt_route_gap"] = (via_contour - via_eigen).norm();
        results["contour_center"] = contour.center.real();
        results["contour_radius"] = contour.radius;
    } else if (cfg.experiment == "radius-compare") {
        TwistedSeq a = TwistedSeq::basis(1, 0, Theta::from_lattice(spec));
        a = a + TwistedSeq::basis(-1, 0, Theta::from_lattice(spec));
        const RadiusCompareReport rep = spectral_radius_compare(a, spec, 6);
        results["r_seq"] = rep.r_seq;
        results["r_op"] = *rep.r_op;
        results["gap"] = rep.gap;
    } else if (cfg.experiment == "condition-a") {
        const Vec g = build_window(cfg);
        Report sums;
        for (double s : cfg.s_list)
            sums["s" + format_double(s)] = condition_a_sum(g, g, spec, s);
        results["sums"] = sums;
    } else {
        throw CLI::ValidationError("unknown experiment: " + cfg.experiment);
    }
    return results;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParameterError("cannot read config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParameterError("config line is not key=value: " + line);
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-commutative torus / Gabor analysis experiment driver"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;

    CLI::App* run = app.add_subcommand("run", "run one experiment");
    run->add_option("experiment", cfg.experiment,
                    "frame-bounds|dual-window|tight-window|janssen|figa-check|"
                    "wexler-raz|invert-algebra|decay-profile|holo-calculus|"
                    "radius-compare|condition-a")
        ->required();
    run->add_option("--config", config_path, "flat key=value config file");
    run->add_option("--L", cfg.L, "signal length");
    run->add_option("--a", cfg.a, "time step");
    run->add_option("--b", cfg.b, "frequency step");
    run->add_option("--window", cfg.window, "gaussian|boxcarN|hann|point_mass");
    run->add_option("--sigma", cfg.sigma, "gaussian width");
    run->add_option("--s", cfg.s_list, "smoothness exponents");
    run->add_option("--nu", cfg.nu_list, "operator powers");
    run->add_option("--nodes", cfg.nodes, "contour quadrature nodes");
    run->add_option("--seed", cfg.seed, "random seed");
    run->add_option("--threads", cfg.threads, "worker threads (affects speed only)");
    run->add_option("--out", cfg.outdir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (!config_path.empty()) {
            // CLI flags override file values, so only fill unset options.
            const auto kv = load_config_file(config_path);
            auto fill = [&](const char* key, auto& slot) {
                const auto it = kv.find(key);
                if (it == kv.end() || run->count(std::string("--") + key) > 0) return;
                std::istringstream ss(it->second);
                ss >> slot;
                if (ss.fail()) throw ParameterError(std::string("bad config value for ") + key);
            };
            fill("L", cfg.L);
            fill("a", cfg.a);
            fill("b", cfg.b);
            fill("window", cfg.window);
            fill("sigma", cfg.sigma);
            fill("nodes", cfg.nodes);
            fill("seed", cfg.seed);
            fill("threads", cfg.threads);
            fill("out", cfg.outdir);
        }
        if (cfg.outdir.empty()) {
            const char* env = std::getenv("NCT_OUTPUT_DIR");
            cfg.outdir = env != nullptr ? env : ".";
        }
        worker_threads() = cfg.threads;

        const fs::path outdir(cfg.outdir);
        fs::create_directories(outdir);

        Report report;
        report["experiment"] = cfg.experiment;
        report["library_version"] = kVersion;
        report["config"] = config_json(cfg);
        report["results"] = run_experiment(cfg, outdir);
        write_report((outdir / "report.json").string(), report);
        std::cout << "wrote " << (outdir / "report.json").string() << "\n";
        return 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParameterError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ThetaMismatchError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
