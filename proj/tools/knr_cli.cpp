// Command-line front end: single-point observables, parameter sweeps,
// figure presets, Wigner grids, and analytic-vs-oracle comparison.
#include <cstdio>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "knr/sweep.hpp"

namespace {

using namespace knr;

struct CliOptions {
    KnrParams params{20.0, 0.0, 5.0, 1.0, 0.0};
    std::string engine = "analytic";
    std::string out;
    std::string format = "csv";
};

Engine parse_engine(const std::string& name) {
    if (name == "analytic") return Engine::Analytic;
    if (name == "oracle") return Engine::Oracle;
    if (name == "both") return Engine::Both;
    throw CLI::ValidationError("--engine", "must be analytic, oracle, or both");
}

ExportFormat parse_format(const std::string& name) {
    if (name == "csv") return ExportFormat::Csv;
    if (name == "json") return ExportFormat::Json;
    throw CLI::ValidationError("--format", "must be csv or json");
}

void emit(const SweepResult& result, const CliOptions& opt) {
    if (!opt.out.empty()) {
        export_result(result, parse_format(opt.format), opt.out);
        std::printf("wrote %zu row(s) to %s\n", result.rows.size(), opt.out.c_str());
        return;
    }
    for (const auto& row : result.rows) {
        std::printf("delta=%g omega=%g chi=%g  mean_n=%.12g g2=%.12g", row.delta, row.omega,
                    row.chi, row.mean_n, row.g2);
        if (result.spec.engine == Engine::Both) {
            std::printf("  max_dP=%.3e", row.max_discrepancy);
        }
        std::printf("  converged=%d\n", row.converged(result.spec.engine) ? 1 : 0);
    }
}

SweepSpec point_spec(const CliOptions& opt) {
    SweepSpec spec;
    spec.fixed = opt.params;
    spec.engine = parse_engine(opt.engine);
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steady-state observables of a driven dissipative Kerr resonator"};
    app.require_subcommand(1);
    app.fallthrough();

    CliOptions opt;
    app.add_option("--chi", opt.params.chi, "Kerr nonlinearity chi/gamma");
    app.add_option("--delta", opt.params.delta, "detuning Delta/gamma");
    app.add_option("--omega", opt.params.omega_drive, "drive amplitude Omega/gamma");
    app.add_option("--gamma", opt.params.gamma, "decay rate (unit scale)");
    app.add_option("--nbath", opt.params.n_bath, "bath occupation (oracle engine only)");
    app.add_option("--engine", opt.engine, "analytic | oracle | both");
    app.add_option("--out", opt.out, "output file path");
    app.add_option("--format", opt.format, "csv | json");
    app.set_config("--config", "", "flat key = value configuration file");

    auto* pn = app.add_subcommand("pn", "steady-state photon-number distribution");
    auto* mean = app.add_subcommand("mean", "steady-state mean photon number");
    auto* g2cmd = app.add_subcommand("g2", "zero-delay second-order correlation");
    auto* compare = app.add_subcommand("compare", "analytic vs oracle at one point");

    auto* wig = app.add_subcommand("wigner", "Wigner function on a phase-space window");
    double xmin = -4.0, xmax = 4.0, ymin = -4.0, ymax = 4.0;
    int nx = 201, ny = 201;
    wig->add_option("--xmin", xmin);
    wig->add_option("--xmax", xmax);
    wig->add_option("--ymin", ymin);
    wig->add_option("--ymax", ymax);
    wig->add_option("--nx", nx);
    wig->add_option("--ny", ny);

    auto* sweep = app.add_subcommand("sweep", "sweep an observable over one or two axes");
    std::vector<std::string> vars;
    std::vector<double> starts, stops;
    std::vector<int> steps;
    sweep->add_option("--var", vars, "swept variable: delta | omega | chi (repeat for 2D)")
        ->required();
    sweep->add_option("--start", starts)->required();
    sweep->add_option("--stop", stops)->required();
    sweep->add_option("--steps", steps)->required();

    auto* preset = app.add_subcommand("preset", "run a stored figure preset");
    std::string preset_id;
    preset->add_option("id", preset_id, "preset id, e.g. fig3a")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (pn->parsed()) {
            auto result = run_sweep(point_spec(opt));
            if (opt.out.empty()) {
                const auto dist = photon_distribution(opt.params);
                for (int n = 0; n <= dist.n_max; ++n) std::printf("P%-3d %.12g\n", n, dist.p(n));
                std::printf("tail_mass %.3e\n", dist.tail_mass);
            } else {
                emit(result, opt);
            }
        } else if (mean->parsed() || g2cmd->parsed()) {
            auto result = run_sweep(point_spec(opt));
            if (opt.out.empty()) {
                const auto& row = result.rows.front();
                std::printf("%.17g\n", mean->parsed() ? row.mean_n : row.g2);
            } else {
                emit(result, opt);
            }
        } else if (compare->parsed()) {
            auto spec = point_spec(opt);
            spec.engine = Engine::Both;
            auto result = run_sweep(spec);
            emit(result, opt);
        } else if (wig->parsed()) {
            const auto grid = parse_engine(opt.engine) == Engine::Oracle
                                  ? oracle_wigner(steady_state(opt.params), xmin, xmax, ymin,
                                                  ymax, nx, ny)
                                  : wigner(opt.params, xmin, xmax, ymin, ymax, nx, ny);
            if (opt.out.empty()) {
                std::printf("W grid %dx%d, max=%.6g, raw window integral=%.6g\n", nx, ny,
                            grid.values.maxCoeff(), grid.norm_estimate);
            } else {
                export_wigner(grid, opt.out);
                std::printf("wrote %dx%d grid to %s\n", nx, ny, opt.out.c_str());
            }
        } else if (sweep->parsed()) {
            if (vars.size() != starts.size() || vars.size() != stops.size() ||
                vars.size() != steps.size() || vars.empty() || vars.size() > 2) {
                throw InvalidParams("sweep: --var/--start/--stop/--steps must be given once or twice");
            }
            SweepSpec spec = point_spec(opt);
            static const std::map<std::string, SweepVariable> kVars = {
                {"delta", SweepVariable::Detuning},
                {"omega", SweepVariable::Drive},
                {"chi", SweepVariable::Nonlinearity}};
            for (size_t i = 0; i < vars.size(); ++i) {
                const auto it = kVars.find(vars[i]);
                if (it == kVars.end()) throw InvalidParams("sweep: unknown variable " + vars[i]);
                spec.axes.push_back({it->second, starts[i], stops[i], steps[i]});
            }
            emit(run_sweep(spec), opt);
        } else if (preset->parsed()) {
            SweepSpec spec = figure_preset(preset_id);
            spec.engine = parse_engine(opt.engine);
            auto result = run_sweep(spec);
            emit(result, opt);
            if (spec.with_wigner && !opt.out.empty()) {
                const auto grid = wigner(spec.fixed, -4.0, 4.0, -4.0, 4.0, 201, 201);
                const std::string wpath = opt.out + ".wigner.csv";
                export_wigner(grid, wpath);
                std::printf("wrote Wigner grid to %s\n", wpath.c_str());
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
