#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "macsf/config.hpp"
#include "macsf/errors.hpp"
#include "macsf/io.hpp"
#include "macsf/normalized.hpp"
#include "macsf/verify.hpp"

namespace {

using namespace macsf;

struct Options {
    std::string config_path;
    std::string out_dir = ".";
    bool svg = false;
};

struct Scenario {
    RunConfig cfg;
    ContorsionTensor tensor;
    PsiCoefficients coeffs;
    double c = 0.0;
    SupportGrid s0;
    double k0 = 0.0;
};

Scenario load_scenario(const Options& opt)
{
    Scenario sc;
    sc.cfg = parse_config(read_file(opt.config_path));
    sc.tensor = make_tensor(sc.cfg);
    sc.coeffs = psi_coefficients(sc.tensor);
    sc.c = norm(sc.tensor);
    sc.s0 = make_initial(sc.cfg);
    const SupportGrid k = curvature(sc.s0);  // rejects non-convex input, names the theta
    sc.k0 = k[0];
    for (int i = 1; i < k.n(); ++i) sc.k0 = std::min(sc.k0, k[i]);
    return sc;
}

void print_hypotheses(const Scenario& sc)
{
    std::printf("k0 > 2c: %s (%.6g %s %.6g)\n", sc.k0 > 2.0 * sc.c ? "yes" : "no", sc.k0,
                sc.k0 > 2.0 * sc.c ? ">" : "<=", 2.0 * sc.c);
    std::printf("k0 > 3c: %s (%.6g %s %.6g)\n", sc.k0 > 3.0 * sc.c ? "yes" : "no", sc.k0,
                sc.k0 > 3.0 * sc.c ? ">" : "<=", 3.0 * sc.c);
    if (sc.k0 <= 2.0 * sc.c)
        std::printf("warning: k0 <= 2c, outside the convergence hypothesis; proceeding anyway\n");
}

std::string out_path(const Options& opt, const char* name)
{
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / name).string();
}

void write_svg(const Options& opt, const FlowTrace& trace)
{
    const size_t m = trace.states.size();
    std::vector<PlaneCurve> curves;
    std::vector<size_t> picked;
    const size_t want = std::min<size_t>(12, m);
    for (size_t j = 0; j < want; ++j) {
        const size_t idx = m == 1 ? 0 : j * (m - 1) / (want - 1);
        if (picked.empty() || picked.back() != idx) picked.push_back(idx);
    }
    for (size_t idx : picked) curves.push_back(reconstruct(trace.states[idx].s));
    write_file(out_path(opt, "curves.svg"), curves_svg(curves));
}

int cmd_simulate(const Options& opt)
{
    const Scenario sc = load_scenario(opt);
    print_hypotheses(sc);
    const FlowTrace trace = run(sc.s0, sc.coeffs, sc.cfg.flow);
    write_file(out_path(opt, "trace.csv"), trace_csv(trace, sc.coeffs));
    write_file(out_path(opt, "summary.csv"), summary_csv(trace));
    if (opt.svg) write_svg(opt, trace);
    std::printf("stop_reason = %s\n", to_string(trace.stop_reason));
    std::printf("t_stop = %.6g\n", trace.states.back().t);
    if (std::isfinite(trace.omega_hat)) std::printf("omega_hat = %.6g\n", trace.omega_hat);
    else std::printf("omega_hat = not estimated (run did not stop on AreaReached)\n");
    return 0;
}

int cmd_normalize(const Options& opt)
{
    const Scenario sc = load_scenario(opt);
    print_hypotheses(sc);
    const FlowTrace trace = run(sc.s0, sc.coeffs, sc.cfg.flow);
    write_file(out_path(opt, "trace.csv"), trace_csv(trace, sc.coeffs));
    write_file(out_path(opt, "summary.csv"), summary_csv(trace));
    if (opt.svg) write_svg(opt, trace);
    if (!std::isfinite(trace.omega_hat))
        throw TraceError("collapse time not estimated; the run must stop on AreaReached");

    std::vector<NormalizedState> states;
    if (sc.cfg.normalized_mode == RunConfig::NormalizedMode::Posthoc) {
        states = normalize_trace(trace);
    } else {
        const Vec2 p = collapse_point_estimate(trace);
        const double scale = 1.0 / std::sqrt(2.0 * trace.omega_hat);
        SupportGrid s0t = sc.s0;
        for (int i = 0; i < s0t.n(); ++i) {
            const double th = s0t.theta(i);
            s0t[i] = scale * (sc.s0[i] - p[0] * std::cos(th) - p[1] * std::sin(th));
        }
        states = run_normalized(s0t, sc.coeffs, trace.omega_hat, sc.cfg.flow.cfl, sc.cfg.tau_max,
                                sc.cfg.flow.record_every)
                     .states;
    }
    write_file(out_path(opt, "normalized_trace.csv"), normalized_trace_csv(states));
    write_file(out_path(opt, "normalized_summary.csv"), normalized_summary_csv(states));
    std::printf("omega_hat = %.6g\n", trace.omega_hat);
    std::printf("tau_final = %.6g\n", states.back().tau);
    std::printf("circle_deviation_final = %.6g\n", circle_deviation(states.back().s_tilde));
    return 0;
}

int cmd_reduce(const Options& opt)
{
    const Scenario sc = load_scenario(opt);
    const PsiCoefficients& c = sc.coeffs;
    const Reduction tr = reduce_by_translation(c);
    const Reduction canon = reduce_to_canonical(c);
    std::printf("psi coefficients: a30=%.12g a03=%.12g a12=%.12g a21=%.12g\n", c.a30, c.a03, c.a12,
                c.a21);
    std::printf("norm c = %.12g\n", sc.c);
    std::printf("translation drift = (%.12g, %.12g)\n", tr.drift[0], tr.drift[1]);
    std::printf("rotation = %.12g\n", canon.rotation);
    std::printf("canonical a = %.12g\n", canon.reduced.a30);
    return 0;
}

int cmd_verify(const Options& opt)
{
    const Scenario sc = load_scenario(opt);
    const FlowTrace trace = run(sc.s0, sc.coeffs, sc.cfg.flow);
    write_file(out_path(opt, "trace.csv"), trace_csv(trace, sc.coeffs));
    write_file(out_path(opt, "summary.csv"), summary_csv(trace));

    std::vector<ClaimResult> claims = scenario_claims(sc.cfg);
    for (const CriterionResult& cr : builtin_criteria())
        for (const ClaimResult& part : cr.parts) claims.push_back(part);

    std::string report;
    for (const ClaimResult& c : claims) report += claim_line(c) + "\n";
    std::fputs(report.c_str(), stdout);
    write_file(out_path(opt, "verify_report.txt"), report);
    return all_passed(claims) ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"curve shortening flow in the metric-affine plane (support-function solver)"};
    app.require_subcommand(1);

    Options opt;
    int mode = 0;
    for (auto [name, id, desc] :
         {std::tuple{"simulate", 1, "integrate the flow and export trace/summary CSVs"},
          std::tuple{"normalize", 2, "simulate, then rescale onto the normalized flow"},
          std::tuple{"verify", 3, "run the verification claims; exit 0 iff all pass"},
          std::tuple{"reduce", 4, "print the anisotropy reductions of the configured tensor"}}) {
        CLI::App* cmd = app.add_subcommand(name, desc);
        cmd->add_option("--config", opt.config_path, "config file")->required();
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_flag("--svg", opt.svg, "also export curves.svg");
        cmd->callback([&mode, id = id]() { mode = id; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        switch (mode) {
            case 1: return cmd_simulate(opt);
            case 2: return cmd_normalize(opt);
            case 3: return cmd_verify(opt);
            case 4: return cmd_reduce(opt);
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config parse error: %s\n", e.what());
        return 1;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "config validation error: %s\n", e.what());
        return 1;
    } catch (const NonConvexError& e) {
        std::fprintf(stderr, "solver error (NonConvex): %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 2;
    }
    return 1;
}
