#pragma once

// Spin-j bookkeeping shared by every other module: the (2j+1)-dimensional
// index map, log-space factorials, the Wigner matrix at beta = pi/2 and
// SU(2) coherent-state amplitudes.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace kicktop {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Spin quantum number stored as 2j, so half-integer spins stay exact.
///
/// Magnetic quantum numbers m = -j, ..., +j map onto array indices
/// 0, ..., N-1 through idx = m + j.
class SpinQuantum {
  public:
    constexpr SpinQuantum() = default;
    /// Throws std::domain_error if two_j is negative.
    explicit SpinQuantum(int two_j);

    /// Accepts j = 0, 0.5, 1, ...; anything not a multiple of 1/2 throws.
    static SpinQuantum from_j(double j);

    constexpr int two_j() const noexcept { return two_j_; }
    constexpr std::size_t dim() const noexcept { return static_cast<std::size_t>(two_j_) + 1; }
    constexpr double j() const noexcept { return 0.5 * two_j_; }
    constexpr bool is_integer() const noexcept { return two_j_ % 2 == 0; }

    /// m for array index idx.
    constexpr double m(std::size_t idx) const noexcept {
        return static_cast<double>(idx) - j();
    }
    /// 2m for array index idx (always an integer).
    constexpr int two_m(std::size_t idx) const noexcept {
        return 2 * static_cast<int>(idx) - two_j_;
    }
    /// j - m for array index idx, as an integer.
    constexpr int j_minus_m(std::size_t idx) const noexcept {
        return two_j_ - static_cast<int>(idx);
    }
    /// j + m for array index idx, as an integer.
    constexpr int j_plus_m(std::size_t idx) const noexcept { return static_cast<int>(idx); }

    friend constexpr bool operator==(SpinQuantum, SpinQuantum) = default;

  private:
    int two_j_ = 0;
};

/// Table of ln(n!) for n = 0..max_n, accumulated as a running sum of ln(i).
class LogFactorialTable {
  public:
    explicit LogFactorialTable(std::size_t max_n);

    std::size_t max_n() const noexcept { return values_.size() - 1; }
    /// ln(n!); throws std::out_of_range past the table.
    double operator()(std::size_t n) const;
    const std::vector<double>& values() const noexcept { return values_; }

  private:
    std::vector<double> values_;
};

/// ln C(n, k). Evaluated as ln n! - ln max(k, n-k)! - ln min(k, n-k)! so the
/// result is bitwise symmetric under k -> n - k.
///
/// Throws std::domain_error for negative inputs or k > n, and
/// std::out_of_range if the table does not cover n.
double log_binomial(const LogFactorialTable& table, long long n, long long k);

/// Convenience overload with a process-wide table that grows on demand.
double log_binomial(long long n, long long k);

/// d^{(j)}_{s m}(pi/2) stored with entry (idx(s), idx(m)).
///
/// The matrix is real orthogonal. Consumers treat the column index as the
/// source basis state of a propagator.
struct WignerHalfPiMatrix {
    SpinQuantum spin;
    RealMatrix entries;

    double operator()(std::size_t s_idx, std::size_t m_idx) const {
        return entries(static_cast<Eigen::Index>(s_idx), static_cast<Eigen::Index>(m_idx));
    }
};

/// Builds d^{(j)}(pi/2) from the three-term recursion in m with seeds
/// V_{-j} = 1, V_{-j+1} = 2s and the prefactor
/// (-1)^{s-m} 2^{-j} sqrt(C(2j, j-s) / C(2j, j+m)) taken in log space.
///
/// Forward recursion loses all accuracy once it runs into the decaying tail
/// at m > 0, so it stops at m = 0 and the remaining columns come from the
/// reflection d_{s,-m}(pi/2) = (-1)^{j+s} d_{s,m}(pi/2).
WignerHalfPiMatrix wigner_d_half_pi(SpinQuantum spin);

/// <j, m | theta0, phi0> for the directed angular momentum state:
///   (1 + |g|^2)^{-j} g^{j-m} sqrt(C(2j, j+m)),  g = exp(i phi0) tan(theta0/2),
/// evaluated as sqrt(C) cos^{j+m}(theta0/2) sin^{j-m}(theta0/2) e^{i(j-m)phi0}
/// so both poles are regular. theta0 outside [0, pi] throws std::domain_error.
ComplexVector coherent_amplitudes(SpinQuantum spin, double theta0, double phi0);

} // namespace kicktop
