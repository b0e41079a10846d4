#include "kicktop/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "kicktop/rmt.hpp"

#ifndef KICKTOP_VERSION
#define KICKTOP_VERSION "unknown"
#endif

namespace kicktop {

std::string format_value(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

namespace {

CoupledParams coupled_params(const RunConfig& config, double epsilon) {
    return {{config.spin, config.resolved_k1()}, {config.spin, config.resolved_k2()}, epsilon};
}

void check_snapshots(const RunConfig& config) {
    for (const auto s : config.resolved_snapshots()) {
        if (s > config.steps) {
            throw ConfigError("snapshot step " + std::to_string(s) + " is past the last step " +
                              std::to_string(config.steps));
        }
    }
}

bool wants(const std::vector<std::size_t>& steps, std::size_t step) {
    return std::binary_search(steps.begin(), steps.end(), step);
}

// Tab-separated file with a single # header line.
class TableWriter {
  public:
    TableWriter(const std::filesystem::path& dir, std::string name, const std::string& header)
        : name_(std::move(name)), path_(dir / name_) {
        out_.open(path_, std::ios::out | std::ios::trunc);
        if (!out_) {
            throw IoError("cannot open " + path_.string() + " for writing");
        }
        out_ << "# " << header << '\n';
    }

    template <class... Cols>
    void row(const Cols&... cols) {
        bool first = true;
        ((out_ << (first ? "" : "\t") << cell(cols), first = false), ...);
        out_ << '\n';
        ++rows_;
    }

    OutputFile finish() {
        out_.close();
        if (out_.fail()) {
            throw IoError("failed writing " + path_.string());
        }
        return {name_, rows_};
    }

  private:
    static std::string cell(double v) { return format_value(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }

    std::string name_;
    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t rows_ = 0;
};

std::filesystem::path prepare_out(const RunConfig& config) {
    std::error_code ec;
    std::filesystem::create_directories(config.out, ec);
    if (ec || !std::filesystem::is_directory(config.out)) {
        throw IoError("cannot create output directory " + config.out.string());
    }
    return config.out;
}

template <class F>
RunSummary timed(const RunConfig& config, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    RunSummary summary{config, {}, 0.0};
    summary.files = body(prepare_out(config));
    summary.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return summary;
}

EntropyRow entropy_row(std::size_t step, const PureState& state, const FWeightTable& table) {
    const auto rdm = reduce(state, 1);
    const auto ent = entropies(schmidt(rdm));
    const double dn = delta_n_eff(m2_rdm(rdm, table), state.spin.dim());
    return {step, ent.von_neumann, ent.linear, dn, gamma_factor(ent.von_neumann, dn, state.spin.dim())};
}

} // namespace

std::vector<EntropyRow> entropy_series(const RunConfig& config) {
    const FWeightTable table(config.spin);
    PureState state = initial_product_state(config.spin, config.theta0, config.phi0, config.theta0, config.phi0);
    std::vector<EntropyRow> rows;
    rows.push_back(entropy_row(0, state, table));
    evolve(std::move(state), coupled_params(config, config.epsilon), config.steps,
           [&](std::size_t step, const PureState& s) {
               if (step % config.stride == 0) rows.push_back(entropy_row(step, s, table));
           });
    return rows;
}

std::vector<OccupancyRow> single_top_occupancy(const RunConfig& config) {
    const FWeightTable table(config.spin);
    const std::size_t n = config.spin.dim();
    std::vector<OccupancyRow> rows;
    auto record = [&](std::size_t step, const ComplexVector& v) {
        const double m2 = m2_pure(v, table);
        rows.push_back({step, m2, delta_n_eff(m2, n)});
    };
    ComplexVector v = coherent_amplitudes(config.spin, config.theta0, config.phi0);
    record(0, v);
    evolve_single(std::move(v), {config.spin, config.resolved_k1()}, config.steps, record);
    return rows;
}

std::vector<std::pair<double, double>> initial_condition_lattice(std::size_t n) {
    std::vector<std::pair<double, double>> out;
    for (std::size_t a = 0; a < n; ++a) {
        const double theta = (static_cast<double>(a) + 0.5) * std::numbers::pi / static_cast<double>(n);
        for (std::size_t b = 0; b < n; ++b) {
            const double phi =
                -std::numbers::pi + (static_cast<double>(b) + 0.5) * 2.0 * std::numbers::pi / static_cast<double>(n);
            out.emplace_back(theta, phi);
        }
    }
    return out;
}

std::vector<RmtCompareRow> rmt_compare_series(const RunConfig& config) {
    const auto lattice = initial_condition_lattice(config.ic_grid);
    std::vector<RmtCompareRow> rows;
    for (const double eps : config.eps_list) {
        std::vector<double> measured(config.steps + 1, 0.0);
        const CoupledPropagator prop(coupled_params(config, eps));
        for (const auto& [theta, phi] : lattice) {
            PureState state = initial_product_state(config.spin, theta, phi, theta, phi);
            for (std::size_t step = 1; step <= config.steps; ++step) {
                prop.step(state);
                const ComplexMatrix rho = state.amplitudes * state.amplitudes.adjoint();
                measured[step] += 1.0 - rho.squaredNorm();
            }
        }
        const double p_exact = sr_p(config.spin, eps, SrMode::ExactSum);
        const double b_exact = sr_bracket(config.spin, eps, SrMode::ExactSum);
        const double p_closed = sr_p(config.spin, eps, SrMode::ClosedForm);
        const double b_closed = sr_bracket(config.spin, eps, SrMode::ClosedForm);
        for (std::size_t step = 1; step <= config.steps; ++step) {
            const double power = 4.0 * static_cast<double>(step - 1);
            RmtCompareRow row{eps, step, measured[step] / static_cast<double>(lattice.size()), 0.0, 0.0};
            if (eps != 0.0) {
                row.exact = 1.0 - std::pow(p_exact, power) * b_exact;
                row.closed = 1.0 - std::pow(p_closed, power) * b_closed;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<SnapshotVectors> snapshot_vectors(const RunConfig& config) {
    check_snapshots(config);
    const auto snaps = config.resolved_snapshots();
    std::vector<SnapshotVectors> out;

    if (config.stats_mode == StatsMode::SingleTop) {
        ComplexVector v = coherent_amplitudes(config.spin, config.theta0, config.phi0);
        if (wants(snaps, 0)) out.push_back({0, {v}});
        const std::size_t last = snaps.back();
        if (last > 0) {
            evolve_single(std::move(v), {config.spin, config.resolved_k1()}, last,
                          [&](std::size_t step, const ComplexVector& s) {
                              if (wants(snaps, step)) out.push_back({step, {s}});
                          });
        }
        return out;
    }

    auto leading = [&](std::size_t step, const PureState& s) {
        const auto spectrum = schmidt(reduce(s, 1));
        const auto count = std::min<std::size_t>(config.pool_vectors, config.spin.dim());
        SnapshotVectors snap{step, {}};
        for (std::size_t a = 0; a < count; ++a) {
            snap.vectors.push_back(spectrum.eigenvectors.col(static_cast<Eigen::Index>(a)));
        }
        out.push_back(std::move(snap));
    };
    PureState state = initial_product_state(config.spin, config.theta0, config.phi0, config.theta0, config.phi0);
    if (wants(snaps, 0)) leading(0, state);
    const std::size_t last = snaps.back();
    if (last > 0) {
        evolve(std::move(state), coupled_params(config, config.epsilon), last,
               [&](std::size_t step, const PureState& s) {
                   if (wants(snaps, step)) leading(step, s);
               });
    }
    return out;
}

bool is_saturated_step(const RunConfig& config, std::size_t step) {
    return 4 * step >= 3 * config.steps && step > 0;
}

std::vector<HusimiSnapshot> husimi_snapshots(const RunConfig& config) {
    check_snapshots(config);
    const auto snaps = config.resolved_snapshots();
    const SphericalGrid grid(config.spin, config.grid_theta, config.grid_phi);
    std::vector<HusimiSnapshot> out;
    auto record = [&](std::size_t step, const PureState& s) {
        out.push_back({step, husimi_field(reduce(s, 1), grid)});
    };
    PureState state = initial_product_state(config.spin, config.theta0, config.phi0, config.theta0, config.phi0);
    if (wants(snaps, 0)) record(0, state);
    const std::size_t last = snaps.back();
    if (last > 0) {
        evolve(std::move(state), coupled_params(config, config.epsilon), last,
               [&](std::size_t step, const PureState& s) {
                   if (wants(snaps, step)) record(step, s);
               });
    }
    return out;
}

RunSummary run_evolve(const RunConfig& config) {
    return timed(config, [&](const std::filesystem::path& dir) {
        const auto rows = entropy_series(config);
        TableWriter out(dir, "entropy.tsv", "n\tS_V\tS_R\tdelta_n_eff\tgamma");
        for (const auto& r : rows) out.row(r.step, r.von_neumann, r.linear, r.delta_n_eff, r.gamma);
        return std::vector<OutputFile>{out.finish()};
    });
}

RunSummary run_portrait(const RunConfig& config) {
    return timed(config, [&](const std::filesystem::path& dir) {
        std::vector<SpherePoint> ics{sphere_point(config.theta0, config.phi0)};
        const auto grid = portrait_grid(config.portrait_grid, config.portrait_grid);
        ics.insert(ics.end(), grid.begin(), grid.end());
        const auto samples = phase_portrait(config.resolved_k1(), ics, config.portrait_iter);
        TableWriter out(dir, "portrait.tsv", "orbit\titer\tphi\tcos_theta");
        for (const auto& s : samples) out.row(s.orbit, s.iteration, s.coords.phi, s.coords.cos_theta);
        return std::vector<OutputFile>{out.finish()};
    });
}

RunSummary run_husimi(const RunConfig& config) {
    return timed(config, [&](const std::filesystem::path& dir) {
        std::vector<OutputFile> files;
        for (const auto& snap : husimi_snapshots(config)) {
            const auto& g = snap.field.grid;
            const std::string header = "i_theta\ti_phi\ttheta\tphi\thusimi\tgrid n_theta=" + std::to_string(g.n_theta()) +
                                       " n_phi=" + std::to_string(g.n_phi()) + " j=" + format_value(config.spin.j()) +
                                       " step=" + std::to_string(snap.step);
            TableWriter out(dir, "husimi_n" + std::to_string(snap.step) + ".tsv", header);
            for (std::size_t i = 0; i < g.n_theta(); ++i) {
                for (std::size_t k = 0; k < g.n_phi(); ++k) {
                    out.row(i, k, g.theta(i), g.phi(k),
                            snap.field.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
                }
            }
            files.push_back(out.finish());
        }
        return files;
    });
}

RunSummary run_deltaneff(const RunConfig& config) {
    return timed(config, [&](const std::filesystem::path& dir) {
        TableWriter out(dir, "deltaneff.tsv", "n\tM2\tdelta_n_eff");
        for (const auto& r : single_top_occupancy(config)) out.row(r.step, r.m2, r.delta_n_eff);
        return std::vector<OutputFile>{out.finish()};
    });
}

RunSummary run_rmt_compare(const RunConfig& config) {
    return timed(config, [&](const std::filesystem::path& dir) {
        TableWriter out(dir, "rmt_compare.tsv", "eps\tn\tmeasured\texact\tclosed");
        for (const auto& r : rmt_compare_series(config)) out.row(r.epsilon, r.step, r.measured, r.exact, r.closed);
        TableWriter ics(dir, "initial_conditions.tsv", "index\ttheta\tphi");
        std::size_t index = 0;
        for (const auto& [theta, phi] : initial_condition_lattice(config.ic_grid)) ics.row(index++, theta, phi);
        return std::vector<OutputFile>{out.finish(), ics.finish()};
    });
}

namespace {

void write_histograms(TableWriter& out, const std::vector<ComplexVector>& vectors) {
    constexpr std::size_t bins = 40;
    const double dim = static_cast<double>(vectors.front().size());
    std::vector<double> re, im, intensity;
    for (const auto& v : vectors) {
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            re.push_back(std::sqrt(dim) * v(i).real());
            im.push_back(std::sqrt(dim) * v(i).imag());
            intensity.push_back(dim * std::norm(v(i)));
        }
    }
    auto emit = [&](const char* name, const std::vector<double>& xs, double lo, double hi, auto reference) {
        std::vector<std::size_t> counts(bins, 0);
        const double width = (hi - lo) / bins;
        for (const double x : xs) {
            if (x < lo || x >= hi) continue;
            counts[std::min(bins - 1, static_cast<std::size_t>((x - lo) / width))]++;
        }
        for (std::size_t b = 0; b < bins; ++b) {
            const double a = lo + b * width;
            const double density = static_cast<double>(counts[b]) / (static_cast<double>(xs.size()) * width);
            out.row(std::string(name), a, a + width, counts[b], density, reference(a + 0.5 * width));
        }
    };
    // Re and Im of a GUE component scaled by sqrt(N) are normal with variance 1/2.
    auto gauss = [](double x) { return std::exp(-x * x) / std::sqrt(std::numbers::pi); };
    auto expo = [](double x) { return std::exp(-x); };
    emit("re", re, -4.0, 4.0, gauss);
    emit("im", im, -4.0, 4.0, gauss);
    emit("intensity", intensity, 0.0, 8.0, expo);
}

} // namespace

RunSummary run_stats(const RunConfig& config) {
    return timed(config, [&](const std::filesystem::path& dir) {
        const auto snaps = snapshot_vectors(config);
        const double threshold = ks_threshold(config.spin.dim());
        TableWriter summary(dir, "stats_summary.tsv",
                            "source\tstep\tsamples\tmean_re\tvar_re\tmean_im\tvar_im\tks\tks_threshold");
        auto emit = [&](const std::string& source, std::size_t step, const ComponentStats& st) {
            summary.row(source, step, st.samples, st.mean_re, st.var_re, st.mean_im, st.var_im, st.ks_exponential,
                        threshold);
        };

        std::vector<ComplexVector> pooled;
        for (const auto& snap : snaps) {
            emit("snapshot", snap.step, component_statistics(snap.vectors));
            if (is_saturated_step(config, snap.step)) {
                pooled.insert(pooled.end(), snap.vectors.begin(), snap.vectors.end());
            }
        }
        if (pooled.empty()) {
            for (const auto& snap : snaps) pooled.insert(pooled.end(), snap.vectors.begin(), snap.vectors.end());
        }
        emit("pooled", config.steps, component_statistics(pooled));

        std::mt19937_64 rng(config.seed);
        std::vector<ComplexVector> reference;
        for (std::size_t i = 0; i < pooled.size(); ++i) {
            reference.push_back(random_gue_vector(config.spin.dim(), rng));
        }
        emit("gue_reference", 0, component_statistics(reference));

        TableWriter hist(dir, "stats_hist.tsv", "quantity\tbin_lo\tbin_hi\tcount\tdensity\treference");
        write_histograms(hist, pooled);
        return std::vector<OutputFile>{summary.finish(), hist.finish()};
    });
}

std::string manifest_text(const RunSummary& summary) {
    std::string text = "# kicktop run manifest\n";
    text += "# version: " + std::string(KICKTOP_VERSION) + "\n";
    text += "# duration_seconds: " + format_value(summary.seconds) + "\n";
    for (const auto& f : summary.files) {
        text += "# output: " + f.name + " rows=" + std::to_string(f.rows) + "\n";
    }
    if (summary.config.experiment == ExperimentKind::RmtCompare) {
        text += "# initial conditions: " + std::to_string(summary.config.ic_grid) + "x" +
                std::to_string(summary.config.ic_grid) + " lattice, both tops at the same point\n";
    }
    text += summary.config.to_text();
    return text;
}

RunSummary run_experiment(const RunConfig& config) {
    RunSummary summary;
    switch (config.experiment) {
    case ExperimentKind::Evolve: summary = run_evolve(config); break;
    case ExperimentKind::Portrait: summary = run_portrait(config); break;
    case ExperimentKind::Husimi: summary = run_husimi(config); break;
    case ExperimentKind::DeltaNeff: summary = run_deltaneff(config); break;
    case ExperimentKind::RmtCompare: summary = run_rmt_compare(config); break;
    case ExperimentKind::Stats: summary = run_stats(config); break;
    }
    const auto path = config.out / "manifest.cfg";
    std::ofstream out(path, std::ios::out | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << manifest_text(summary);
    out.close();
    if (out.fail()) {
        throw IoError("failed writing " + path.string());
    }
    return summary;
}

} // namespace kicktop
