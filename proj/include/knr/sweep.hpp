#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "knr/analytic.hpp"
#include "knr/oracle.hpp"

namespace knr {

enum class SweepVariable { Detuning, Drive, Nonlinearity };
enum class Engine { Analytic, Oracle, Both };

struct AxisRange {
    SweepVariable variable = SweepVariable::Detuning;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;

    // exact grid value, no accumulated summation
    double value(int i) const { return start + i * (stop - start) / (steps - 1); }
};

struct SweepSpec {
    std::vector<AxisRange> axes;  // empty = single point, 1 or 2 axes otherwise
    KnrParams fixed;
    Engine engine = Engine::Analytic;
    bool with_wigner = false;  // single points only
    SeriesConfig series;
    OracleConfig oracle;

    void validate() const;
    int row_count() const;
};

struct SweepRow {
    double delta = 0.0;
    double omega = 0.0;
    double chi = 0.0;
    std::array<double, 10> p{};  // P_0 .. P_9
    double mean_n = 0.0;
    double g2 = 0.0;
    bool converged_analytic = false;
    bool converged_oracle = false;
    double max_discrepancy = 0.0;  // max_n |P_n(analytic) - P_n(oracle)|, engine Both

    bool converged(Engine engine) const;
};

struct Peak {
    double position = 0.0;
    double height = 0.0;
};

struct PeakColumn {
    std::string column;
    std::vector<Peak> peaks;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;
    std::vector<PeakColumn> peaks;  // populated for 1D sweeps
};

// Evaluates every grid point (rows ordered row-major over the axes, inner
// axis fastest) on a worker pool; per-point failures are recorded in the
// convergence flags, never aborting the sweep.
SweepResult run_sweep(const SweepSpec& spec);

// Interior local maxima by 3-point comparison with parabolic refinement;
// plateaus report their midpoint.
std::vector<Peak> detect_peaks(const std::vector<double>& column,
                               const std::vector<double>& axis);

// Parameter grids of the reproduced figures: fig1a fig1b fig2a fig3a fig3b
// fig3c fig3d fig4a fig4b fig5a fig5b fig6a fig6b fig7a fig7b fig7c fig8a
// fig8b fig9a fig9b (case-insensitive).
SweepSpec figure_preset(const std::string& id);

enum class ExportFormat { Csv, Json };

void export_result(const SweepResult& result, ExportFormat format, const std::string& path);
void export_wigner(const WignerGrid& grid, const std::string& path);  // x,y,w CSV

std::string to_string(Engine engine);
std::string to_string(SweepVariable variable);

}  // namespace knr
