#include "knr/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace knr {

namespace {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

KnrParams params_for(const SweepSpec& spec, int row) {
    KnrParams p = spec.fixed;
    // row-major over the axes, inner (last) axis fastest
    std::vector<int> idx(spec.axes.size(), 0);
    int r = row;
    for (int a = static_cast<int>(spec.axes.size()) - 1; a >= 0; --a) {
        idx[a] = r % spec.axes[a].steps;
        r /= spec.axes[a].steps;
    }
    for (size_t a = 0; a < spec.axes.size(); ++a) {
        const double v = spec.axes[a].value(idx[a]);
        switch (spec.axes[a].variable) {
            case SweepVariable::Detuning: p.delta = v; break;
            case SweepVariable::Drive: p.omega_drive = v; break;
            case SweepVariable::Nonlinearity: p.chi = v; break;
        }
    }
    return p;
}

void fill_analytic(SweepRow& row, const KnrParams& p, const SeriesConfig& cfg) {
    try {
        const PhotonDistribution dist = photon_distribution(p, cfg);
        for (int n = 0; n < 10; ++n) row.p[n] = dist.p(n);
        row.mean_n = mean_photon_number(p, cfg);
        row.converged_analytic = true;
    } catch (const std::exception&) {
        row.converged_analytic = false;
        return;
    }
    try {
        row.g2 = g2_zero_delay(p, cfg);
    } catch (const VacuumState&) {
        row.g2 = std::numeric_limits<double>::quiet_NaN();
    }
}

void fill_oracle(SweepRow& row, const KnrParams& p, const OracleConfig& cfg,
                 std::array<double, 10>* probs_out) {
    try {
        const SteadyStateDensityMatrix rho = steady_state(p, cfg);
        std::array<double, 10> probs{};
        double mean = 0.0, pair = 0.0;
        for (int n = 0; n < rho.dim; ++n) {
            const double pn = std::max(rho.elements(n, n).real(), 0.0);
            if (n < 10) probs[n] = pn;
            mean += n * pn;
            pair += n * (n - 1.0) * pn;
        }
        if (probs_out) {
            *probs_out = probs;
        } else {
            row.p = probs;
            row.mean_n = mean;
            row.g2 = mean < 1e-14 ? std::numeric_limits<double>::quiet_NaN()
                                  : pair / (mean * mean);
        }
        row.converged_oracle = true;
    } catch (const std::exception&) {
        row.converged_oracle = false;
    }
}

std::vector<double> column_values(const SweepResult& result, int column) {
    std::vector<double> out;
    out.reserve(result.rows.size());
    for (const auto& row : result.rows) {
        if (column < 10) {
            out.push_back(row.p[column]);
        } else if (column == 10) {
            out.push_back(row.mean_n);
        } else {
            out.push_back(row.g2);
        }
    }
    return out;
}

const char* kColumnNames[12] = {"p0", "p1", "p2", "p3", "p4",     "p5",
                                "p6", "p7", "p8", "p9", "mean_n", "g2"};

AxisRange delta_axis(double start = -80.0, double stop = 40.0, int steps = 241) {
    return {SweepVariable::Detuning, start, stop, steps};
}

AxisRange drive_axis(double start = 0.1, double stop = 25.0, int steps = 121) {
    return {SweepVariable::Drive, start, stop, steps};
}

}  // namespace

void SweepSpec::validate() const {
    fixed.validate();
    if (axes.size() > 2) throw InvalidParams("sweep: at most two axes");
    for (const auto& axis : axes) {
        if (axis.steps < 2) throw InvalidParams("sweep: steps must be >= 2");
        if (axis.start == axis.stop) throw InvalidParams("sweep: start must differ from stop");
    }
    if (with_wigner && !axes.empty()) {
        throw InvalidParams("sweep: Wigner output is restricted to single points");
    }
}

int SweepSpec::row_count() const {
    int n = 1;
    for (const auto& axis : axes) n *= axis.steps;
    return n;
}

bool SweepRow::converged(Engine engine) const {
    switch (engine) {
        case Engine::Analytic: return converged_analytic;
        case Engine::Oracle: return converged_oracle;
        default: return converged_analytic && converged_oracle;
    }
}

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    result.rows.resize(spec.row_count());

    const auto eval_row = [&](int i) {
        SweepRow& row = result.rows[i];
        const KnrParams p = params_for(spec, i);
        row.delta = p.delta;
        row.omega = p.omega_drive;
        row.chi = p.chi;
        // failed points stay NaN rather than masquerading as zeros
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.p.fill(nan);
        row.mean_n = nan;
        row.g2 = nan;
        row.max_discrepancy = nan;
        switch (spec.engine) {
            case Engine::Analytic:
                fill_analytic(row, p, spec.series);
                break;
            case Engine::Oracle:
                fill_oracle(row, p, spec.oracle, nullptr);
                break;
            case Engine::Both: {
                fill_analytic(row, p, spec.series);
                std::array<double, 10> oracle_probs{};
                fill_oracle(row, p, spec.oracle, &oracle_probs);
                if (row.converged_analytic && row.converged_oracle) {
                    double d = 0.0;
                    for (int n = 0; n < 10; ++n) {
                        d = std::max(d, std::abs(row.p[n] - oracle_probs[n]));
                    }
                    row.max_discrepancy = d;
                }
                break;
            }
        }
    };

    const int n_rows = static_cast<int>(result.rows.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n_rows == 1) {
        eval_row(0);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (unsigned t = 0; t < std::min<unsigned>(hw, n_rows); ++t) {
            workers.emplace_back([&] {
                int i;
                while ((i = next.fetch_add(1)) < n_rows) eval_row(i);
            });
        }
        for (auto& w : workers) w.join();
    }

    if (spec.axes.size() == 1) {
        std::vector<double> axis(result.rows.size());
        for (size_t i = 0; i < axis.size(); ++i) axis[i] = spec.axes[0].value(static_cast<int>(i));
        for (int c = 0; c < 12; ++c) {
            const auto column = column_values(result, c);
            if (std::any_of(column.begin(), column.end(),
                            [](double v) { return std::isnan(v); })) {
                continue;
            }
            result.peaks.push_back({kColumnNames[c], detect_peaks(column, axis)});
        }
    }
    return result;
}

std::vector<Peak> detect_peaks(const std::vector<double>& column,
                               const std::vector<double>& axis) {
    if (column.size() != axis.size() || column.size() < 3) {
        throw InvalidParams("detect_peaks: column and axis must have equal length >= 3");
    }
    std::vector<Peak> peaks;
    const int n = static_cast<int>(column.size());
    int i = 1;
    while (i < n - 1) {
        if (!(column[i] > column[i - 1])) {
            ++i;
            continue;
        }
        if (column[i] > column[i + 1]) {
            const double denom = column[i - 1] - 2.0 * column[i] + column[i + 1];
            Peak peak{axis[i], column[i]};
            if (denom < 0.0) {
                const double dx = 0.5 * (column[i - 1] - column[i + 1]) / denom;
                const double h = 0.5 * (axis[i + 1] - axis[i - 1]);
                peak.position = axis[i] + dx * h;
                peak.height = column[i] - 0.25 * (column[i - 1] - column[i + 1]) * dx;
            }
            peaks.push_back(peak);
            ++i;
            continue;
        }
        if (column[i] == column[i + 1]) {
            int j = i;
            while (j < n - 1 && column[j + 1] == column[i]) ++j;
            if (j < n - 1 && column[j + 1] < column[i]) {  // interior plateau
                peaks.push_back({0.5 * (axis[i] + axis[j]), column[i]});
            }
            i = j + 1;
            continue;
        }
        ++i;
    }
    return peaks;
}

SweepSpec figure_preset(const std::string& id) {
    std::string key;
    for (char c : id) key.push_back(static_cast<char>(std::tolower(c)));

    SweepSpec spec;
    // Preset numbers are quoted in the source figures' frequency unit, which
    // is the amplitude decay rate: the Lindblad gamma is 2 on that scale.
    spec.fixed = KnrParams{20.0, 0.0, 5.0, 2.0, 0.0};
    if (key == "fig1a" || key == "fig1b") {
        spec.fixed.chi = (key == "fig1a") ? 2.0 : 20.0;
        spec.axes = {delta_axis(-80.0, 40.0, 121), drive_axis()};
    } else if (key == "fig2a" || key == "fig2b") {
        spec.fixed.chi = 2.0;
        spec.fixed.omega_drive = 10.0;
        spec.axes = {delta_axis()};
    } else if (key == "fig3a" || key == "fig3b") {
        spec.fixed.omega_drive = 5.0;
        spec.axes = {delta_axis()};
    } else if (key == "fig3c" || key == "fig3d") {
        spec.fixed.omega_drive = 20.0;
        spec.axes = {delta_axis()};
    } else if (key == "fig4a" || key == "fig4b") {
        spec.fixed = KnrParams{20.0, -20.0, 20.0, 2.0, 0.0};
        spec.axes = {{SweepVariable::Nonlinearity, 1.0, 40.0, 241}};
    } else if (key == "fig5a" || key == "fig5b") {
        spec.fixed = KnrParams{20.0, -20.0, 20.0, 2.0, 0.0};
        spec.axes = {{SweepVariable::Drive, 0.1, 25.0, 241}};
    } else if (key == "fig6a" || key == "fig6b" || key == "fig6c" || key == "fig6d") {
        spec.axes = {delta_axis(-80.0, 40.0, 121), drive_axis()};
    } else if (key == "fig7a" || key == "fig7b" || key == "fig7c") {
        spec.fixed.omega_drive = 20.0;
        spec.fixed.chi = (key == "fig7a") ? 2.0 : (key == "fig7b") ? 10.0 : 20.0;
        spec.axes = {delta_axis()};
    } else if (key == "fig8a" || key == "fig8b") {
        spec.fixed = KnrParams{20.0, 0.0, 5.0, 2.0, 0.0};
        spec.with_wigner = (key == "fig8a");
    } else if (key == "fig9a" || key == "fig9b") {
        spec.fixed = KnrParams{20.0, -40.0, 20.0, 2.0, 0.0};
        spec.with_wigner = (key == "fig9a");
    } else {
        throw UnknownPreset("figure_preset: unknown id '" + id + "'");
    }
    return spec;
}

std::string to_string(Engine engine) {
    switch (engine) {
        case Engine::Analytic: return "analytic";
        case Engine::Oracle: return "oracle";
        default: return "both";
    }
}

std::string to_string(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::Detuning: return "delta";
        case SweepVariable::Drive: return "omega";
        default: return "chi";
    }
}

namespace {

void export_csv(const SweepResult& result, std::ostream& out) {
    out << "delta_over_gamma,omega_over_gamma,chi_over_gamma";
    for (int n = 0; n < 10; ++n) out << ",p" << n;
    out << ",mean_n,g2,engine,converged,max_discrepancy\n";
    const std::string engine = to_string(result.spec.engine);
    for (const auto& row : result.rows) {
        out << format_double(row.delta) << ',' << format_double(row.omega) << ','
            << format_double(row.chi);
        for (int n = 0; n < 10; ++n) out << ',' << format_double(row.p[n]);
        out << ',' << format_double(row.mean_n) << ',' << format_double(row.g2) << ','
            << engine << ',' << (row.converged(result.spec.engine) ? 1 : 0) << ','
            << format_double(row.max_discrepancy) << '\n';
    }
}

json spec_to_json(const SweepSpec& spec) {
    json axes = json::array();
    for (const auto& axis : spec.axes) {
        axes.push_back({{"variable", to_string(axis.variable)},
                        {"start", axis.start},
                        {"stop", axis.stop},
                        {"steps", axis.steps}});
    }
    return {{"axes", axes},
            {"fixed",
             {{"chi", spec.fixed.chi},
              {"delta", spec.fixed.delta},
              {"omega", spec.fixed.omega_drive},
              {"gamma", spec.fixed.gamma},
              {"nbath", spec.fixed.n_bath}}},
            {"engine", to_string(spec.engine)},
            {"with_wigner", spec.with_wigner}};
}

void export_json_stream(const SweepResult& result, std::ostream& out) {
    json rows = json::array();
    for (const auto& row : result.rows) {
        json r = {{"delta_over_gamma", row.delta},
                  {"omega_over_gamma", row.omega},
                  {"chi_over_gamma", row.chi},
                  {"mean_n", row.mean_n},
                  {"g2", row.g2},
                  {"engine", to_string(result.spec.engine)},
                  {"converged", row.converged(result.spec.engine)},
                  {"max_discrepancy", row.max_discrepancy}};
        json probs = json::array();
        for (double v : row.p) probs.push_back(v);
        r["p"] = probs;
        rows.push_back(std::move(r));
    }
    json peaks = json::object();
    for (const auto& pc : result.peaks) {
        json list = json::array();
        for (const auto& peak : pc.peaks) {
            list.push_back({{"position", peak.position}, {"height", peak.height}});
        }
        peaks[pc.column] = std::move(list);
    }
    const json doc = {{"spec", spec_to_json(result.spec)}, {"rows", rows}, {"peaks", peaks}};
    out << doc.dump(2) << '\n';
}

}  // namespace

void export_result(const SweepResult& result, ExportFormat format, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("export: cannot open '" + path + "' for writing");
    if (format == ExportFormat::Csv) {
        export_csv(result, out);
    } else {
        export_json_stream(result, out);
    }
    if (!out.good()) throw IoError("export: write to '" + path + "' failed");
}

void export_wigner(const WignerGrid& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("export: cannot open '" + path + "' for writing");
    out << "x,y,w\n";
    for (int ix = 0; ix < grid.x_axis.size(); ++ix) {
        for (int iy = 0; iy < grid.y_axis.size(); ++iy) {
            out << format_double(grid.x_axis(ix)) << ',' << format_double(grid.y_axis(iy))
                << ',' << format_double(grid.values(ix, iy)) << '\n';
        }
    }
    if (!out.good()) throw IoError("export: write to '" + path + "' failed");
}

}  // namespace knr
