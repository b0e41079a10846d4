#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "kicktop/classical.hpp"
#include "kicktop/config.hpp"
#include "kicktop/entangle.hpp"
#include "kicktop/husimi.hpp"

namespace kicktop {

// Computational cores of the subcommands. The run_* functions below wrap
// them with file output; tests call these directly.

struct EntropyRow {
    std::size_t step = 0;
    double von_neumann = 0.0;
    double linear = 0.0;
    double delta_n_eff = 0.0;
    double gamma = 0.0;
};

/// Coupled evolution from the product coherent state; one row for step 0
/// and for every step divisible by stride.
std::vector<EntropyRow> entropy_series(const RunConfig& config);

struct OccupancyRow {
    std::size_t step = 0;
    double m2 = 0.0;
    double delta_n_eff = 0.0;
};

/// Single top with k1, steps 0..steps.
std::vector<OccupancyRow> single_top_occupancy(const RunConfig& config);

/// The ic_grid x ic_grid lattice theta = (a + 1/2) pi / n, phi = -pi + (b + 1/2) 2 pi / n.
std::vector<std::pair<double, double>> initial_condition_lattice(std::size_t n);

struct RmtCompareRow {
    double epsilon = 0.0;
    std::size_t step = 0;
    double measured = 0.0;
    double exact = 0.0;
    double closed = 0.0;
};

/// S_R averaged over the lattice (both tops start at the same point) with
/// tops k1, k2, against sr_analytic, for every eps in eps_list.
std::vector<RmtCompareRow> rmt_compare_series(const RunConfig& config);

struct SnapshotVectors {
    std::size_t step = 0;
    std::vector<ComplexVector> vectors;
};

/// Single-top states (SingleTop mode) or the pool_vectors leading eigenvectors
/// of rho_1 (RdmEigenvectors mode) at each snapshot step.
std::vector<SnapshotVectors> snapshot_vectors(const RunConfig& config);

/// Snapshots counted as saturated: steps in the last quarter of the run.
bool is_saturated_step(const RunConfig& config, std::size_t step);

struct HusimiSnapshot {
    std::size_t step = 0;
    HusimiField field;
};

/// Reduced Husimi field of top 1 at each snapshot step.
std::vector<HusimiSnapshot> husimi_snapshots(const RunConfig& config);

struct OutputFile {
    std::string name;
    std::size_t rows = 0;
};

struct RunSummary {
    RunConfig config;
    std::vector<OutputFile> files;
    double seconds = 0.0;
};

RunSummary run_evolve(const RunConfig& config);
RunSummary run_portrait(const RunConfig& config);
RunSummary run_husimi(const RunConfig& config);
RunSummary run_deltaneff(const RunConfig& config);
RunSummary run_rmt_compare(const RunConfig& config);
RunSummary run_stats(const RunConfig& config);

/// Dispatches on config.experiment and writes manifest.cfg into config.out.
/// Output failures throw IoError.
RunSummary run_experiment(const RunConfig& config);

/// Text of manifest.cfg: the resolved config as key = value lines, with the
/// version, duration and file inventory as # comments.
std::string manifest_text(const RunSummary& summary);

/// Fixed %.12g formatting used for every data column.
std::string format_value(double value);

} // namespace kicktop
