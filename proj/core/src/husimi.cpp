#include "kicktop/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kicktop {

SphericalGrid::SphericalGrid(SpinQuantum spin, std::size_t n_theta, std::size_t n_phi) : spin_(spin) {
    if (n_theta == 0 || n_phi == 0) {
        throw std::invalid_argument("SphericalGrid: grid sizes must be positive");
    }
    const double dtheta = std::numbers::pi / static_cast<double>(n_theta);
    const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);
    const double norm = static_cast<double>(spin.dim()) / (4.0 * std::numbers::pi);
    theta_.resize(n_theta);
    row_weight_.resize(n_theta);
    for (std::size_t i = 0; i < n_theta; ++i) {
        theta_[i] = (static_cast<double>(i) + 0.5) * dtheta;
        row_weight_[i] = norm * std::sin(theta_[i]) * dtheta * dphi;
    }
    phi_.resize(n_phi);
    for (std::size_t k = 0; k < n_phi; ++k) {
        phi_[k] = -std::numbers::pi + (static_cast<double>(k) + 0.5) * dphi;
    }
}

double SphericalGrid::total_weight() const {
    double total = 0.0;
    for (const double w : row_weight_) total += w;
    return total * static_cast<double>(phi_.size());
}

double HusimiField::integral() const {
    double total = 0.0;
    for (std::size_t i = 0; i < grid.n_theta(); ++i) {
        total += grid.weight(i) * values.row(static_cast<Eigen::Index>(i)).sum();
    }
    return total;
}

HusimiField husimi_field(const ReducedDensityMatrix& rdm, const SphericalGrid& grid) {
    if (rdm.spin != grid.spin()) {
        throw std::invalid_argument("husimi_field: grid and density matrix have different spin");
    }
    const auto n = static_cast<Eigen::Index>(rdm.spin.dim());
    const auto& rho = rdm.entries;
    HusimiField field{grid, RealMatrix(grid.n_theta(), grid.n_phi()), 0.0};

    // With c_m = a_m(theta) e^{i(j-m)phi} and a_m real,
    //   c^dag rho c = sum_d g_d e^{i d phi},  g_d = sum_{m-n=d} a_m a_n rho_mn,
    // and g_{-d} = conj(g_d).
    std::vector<cplx> g(static_cast<std::size_t>(n));
    for (std::size_t it = 0; it < grid.n_theta(); ++it) {
        const ComplexVector c = coherent_amplitudes(rdm.spin, grid.theta(it), 0.0);
        for (Eigen::Index d = 0; d < n; ++d) {
            cplx acc = 0.0;
            for (Eigen::Index b = 0; b + d < n; ++b) {
                acc += c(b + d).real() * c(b).real() * rho(b + d, b);
            }
            g[static_cast<std::size_t>(d)] = (d == 0) ? acc : 2.0 * acc;
        }
        for (std::size_t ip = 0; ip < grid.n_phi(); ++ip) {
            const cplx z = std::polar(1.0, grid.phi(ip));
            cplx acc = 0.0;
            for (Eigen::Index d = n - 1; d >= 0; --d) {
                acc = acc * z + g[static_cast<std::size_t>(d)];
            }
            double value = acc.real();
            if (value < 0.0) {
                field.clip_magnitude = std::max(field.clip_magnitude, -value);
                value = 0.0;
            }
            field.values(static_cast<Eigen::Index>(it), static_cast<Eigen::Index>(ip)) = value;
        }
    }
    return field;
}

HusimiField husimi_field(const ComplexVector& state, const SphericalGrid& grid) {
    return husimi_field(projector(grid.spin(), state), grid);
}

double m2_quadrature(const HusimiField& field) {
    double total = 0.0;
    for (std::size_t i = 0; i < field.grid.n_theta(); ++i) {
        total += field.grid.weight(i) * field.values.row(static_cast<Eigen::Index>(i)).squaredNorm();
    }
    return total;
}

FWeightTable::FWeightTable(SpinQuantum spin) : spin_(spin) {
    const int two_j = spin.two_j();
    const LogFactorialTable table(static_cast<std::size_t>(2 * two_j + 1));
    half_log_binom_.resize(spin.dim());
    for (std::size_t p = 0; p < spin.dim(); ++p) {
        half_log_binom_[p] = 0.5 * log_binomial(table, two_j, spin.j_minus_m(p));
    }
    // s = idx(i) + idx(l) = 2j + i + l, so (2j + i + l)! = s! and (2j - i - l)! = (4j - s)!.
    const std::size_t n_sums = 2 * spin.dim() - 1;
    log_base_.resize(n_sums);
    const double head = std::log(static_cast<double>(spin.dim())) - table(static_cast<std::size_t>(2 * two_j + 1));
    for (std::size_t s = 0; s < n_sums; ++s) {
        log_base_[s] = head + table(static_cast<std::size_t>(2 * two_j) - s) + table(s);
    }
}

double FWeightTable::factor(std::size_t s, std::size_t i) const {
    const std::size_t n = spin_.dim();
    if (s >= 2 * n - 1 || i > s || i >= n || s - i >= n) {
        return 0.0;
    }
    return std::exp(0.5 * log_base_[s] + half_log_binom_[i] + half_log_binom_[s - i]);
}

double FWeightTable::operator()(std::size_t i, std::size_t k, std::size_t l, std::size_t m) const {
    const std::size_t n = spin_.dim();
    if (i >= n || k >= n || l >= n || m >= n) {
        throw std::domain_error("FWeightTable: index outside the basis");
    }
    const std::size_t s = i + l;
    return std::exp(log_base_[s] + half_log_binom_[i] + half_log_binom_[k] + half_log_binom_[l] +
                    half_log_binom_[m]);
}

double f_weight(SpinQuantum spin, double i, double k, double l, double m) {
    auto to_index = [&](double q) {
        const double idx = q + spin.j();
        const double rounded = std::round(idx);
        if (std::abs(idx - rounded) > 1e-9 || rounded < 0.0 || rounded > spin.two_j()) {
            throw std::domain_error("f_weight: magnetic index " + std::to_string(q) + " outside {-j, ..., j}");
        }
        return static_cast<std::size_t>(rounded);
    };
    const FWeightTable table(spin);
    return table(to_index(i), to_index(k), to_index(l), to_index(m));
}

namespace {

// u_s(i) for every admissible i, stored at position i - lo.
void fill_factors(const FWeightTable& table, std::size_t s, std::size_t lo, std::size_t hi, std::vector<double>& u) {
    u.resize(hi - lo + 1);
    for (std::size_t i = lo; i <= hi; ++i) {
        u[i - lo] = table.factor(s, i);
    }
}

} // namespace

double m2_pure(const ComplexVector& state, const FWeightTable& table) {
    const std::size_t n = table.spin().dim();
    if (static_cast<std::size_t>(state.size()) != n) {
        throw std::invalid_argument("m2_pure: state length does not match the table");
    }
    std::vector<double> u;
    double total = 0.0;
    for (std::size_t s = 0; s + 1 < 2 * n; ++s) {
        const std::size_t lo = (s >= n) ? s - n + 1 : 0;
        const std::size_t hi = std::min(s, n - 1);
        fill_factors(table, s, lo, hi, u);
        cplx amp = 0.0;
        for (std::size_t i = lo; i <= hi; ++i) {
            amp += u[i - lo] * state(static_cast<Eigen::Index>(i)) * state(static_cast<Eigen::Index>(s - i));
        }
        total += std::norm(amp);
    }
    return total;
}

double m2_pure(const ComplexVector& state) {
    if (state.size() < 1) {
        throw std::invalid_argument("m2_pure: empty state");
    }
    return m2_pure(state, FWeightTable(SpinQuantum(static_cast<int>(state.size()) - 1)));
}

double m2_rdm(const ReducedDensityMatrix& rdm, const FWeightTable& table) {
    const std::size_t n = table.spin().dim();
    if (rdm.spin != table.spin() || static_cast<std::size_t>(rdm.entries.rows()) != n) {
        throw std::invalid_argument("m2_rdm: density matrix does not match the table");
    }
    const auto& rho = rdm.entries;
    std::vector<double> u;
    cplx total = 0.0;
    for (std::size_t s = 0; s + 1 < 2 * n; ++s) {
        const std::size_t lo = (s >= n) ? s - n + 1 : 0;
        const std::size_t hi = std::min(s, n - 1);
        fill_factors(table, s, lo, hi, u);
        for (std::size_t k = lo; k <= hi; ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            const auto mk = static_cast<Eigen::Index>(s - k);
            cplx inner = 0.0;
            for (std::size_t i = lo; i <= hi; ++i) {
                inner += u[i - lo] * rho(static_cast<Eigen::Index>(i), kk) *
                         rho(static_cast<Eigen::Index>(s - i), mk);
            }
            total += u[k - lo] * inner;
        }
    }
    if (std::abs(total.imag()) > 1e-10) {
        throw ContractViolation("m2_rdm: imaginary residue " + std::to_string(total.imag()) +
                                " in an analytically real sum");
    }
    return total.real();
}

double m2_rdm(const ReducedDensityMatrix& rdm) { return m2_rdm(rdm, FWeightTable(rdm.spin)); }

double delta_n_eff(double m2, std::size_t n) {
    if (!(m2 > 0.0)) {
        throw std::domain_error("delta_n_eff: M2 must be positive");
    }
    return 1.0 / (static_cast<double>(n) * m2);
}

double gamma_factor(double s_v, double delta_n_eff, std::size_t n) {
    if (!(delta_n_eff > 0.0)) {
        throw std::domain_error("gamma_factor: delta_n_eff must be positive");
    }
    return std::exp(s_v) / (static_cast<double>(n) * delta_n_eff);
}

} // namespace kicktop
