#pragma once

#include <cstddef>
#include <vector>

#include "kicktop/entangle.hpp"

namespace kicktop {

/// Midpoint lattice over theta in [0, pi] and phi in (-pi, pi] with Haar
/// weights (2j+1)/(4 pi) sin(theta) dtheta dphi, so the weights sum to ~N.
class SphericalGrid {
  public:
    SphericalGrid(SpinQuantum spin, std::size_t n_theta, std::size_t n_phi);

    SpinQuantum spin() const noexcept { return spin_; }
    std::size_t n_theta() const noexcept { return theta_.size(); }
    std::size_t n_phi() const noexcept { return phi_.size(); }
    double theta(std::size_t i) const { return theta_[i]; }
    double phi(std::size_t k) const { return phi_[k]; }
    /// Weight of node (i, k); independent of k.
    double weight(std::size_t i) const { return row_weight_[i]; }
    double total_weight() const;

  private:
    SpinQuantum spin_;
    std::vector<double> theta_;
    std::vector<double> phi_;
    std::vector<double> row_weight_;
};

struct HusimiField {
    SphericalGrid grid;
    /// values(i, k) = <theta_i, phi_k| rho |theta_i, phi_k>
    RealMatrix values;
    /// Most negative raw value seen before clipping to 0 (0 if none).
    double clip_magnitude = 0.0;

    /// Weighted sum of the values; equals Tr rho up to quadrature error.
    double integral() const;
};

HusimiField husimi_field(const ReducedDensityMatrix& rdm, const SphericalGrid& grid);
HusimiField husimi_field(const ComplexVector& state, const SphericalGrid& grid);

/// Weighted sum of squared values.
double m2_quadrature(const HusimiField& field);

/// F(2j; i, k, l, m) = (2j+1)/(4j+1)! sqrt(C(2j,j-i) C(2j,j-k) C(2j,j-l) C(2j,j-m))
///                     (2j-i-l)! (2j+i+l)!
///
/// The prefactor depends only on i + l, so on the constrained set
/// i + l = k + m the weight factors as F = u_s(i) u_s(k) with
/// u_s(i) = exp(b_s / 2 + h(i) + h(s - i)). The table holds h and b, which is
/// O(N) storage and read-only after construction.
class FWeightTable {
  public:
    explicit FWeightTable(SpinQuantum spin);

    SpinQuantum spin() const noexcept { return spin_; }

    /// Indices are array positions 0..N-1 (idx = m + j).
    double operator()(std::size_t i, std::size_t k, std::size_t l, std::size_t m) const;
    /// u_s(i) for s = i + l in 0..2N-2; zero when s - i falls outside the basis.
    double factor(std::size_t s, std::size_t i) const;

  private:
    SpinQuantum spin_;
    std::vector<double> half_log_binom_;
    std::vector<double> log_base_;
};

/// F for magnetic quantum numbers; any index outside {-j, ..., j} throws
/// std::domain_error. The Kronecker constraint is the caller's business.
double f_weight(SpinQuantum spin, double i, double k, double l, double m);

/// Second moment of the Husimi function of a pure single-top state.
double m2_pure(const ComplexVector& state);
double m2_pure(const ComplexVector& state, const FWeightTable& table);

/// Second moment of the reduced Husimi function. Throws ContractViolation if
/// the analytically real sum has an imaginary residue above 1e-10.
double m2_rdm(const ReducedDensityMatrix& rdm);
double m2_rdm(const ReducedDensityMatrix& rdm, const FWeightTable& table);

/// 1 / (N M2); m2 <= 0 throws std::domain_error.
double delta_n_eff(double m2, std::size_t n);

/// exp(S_V) / (N delta_n_eff); delta_n_eff <= 0 throws std::domain_error.
double gamma_factor(double s_v, double delta_n_eff, std::size_t n);

} // namespace kicktop
