#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "kicktop/evolve.hpp"

namespace kicktop {

/// Raised when an input breaks a documented precondition that the caller
/// was responsible for (as opposed to bad user configuration).
class ContractViolation : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

struct ReducedDensityMatrix {
    SpinQuantum spin;
    ComplexMatrix entries;

    double trace() const { return entries.trace().real(); }
};

/// Partial trace of |psi><psi| over the other top. subsystem is 1 or 2.
ReducedDensityMatrix reduce(const PureState& state, int subsystem);

/// |v><v| for a single-top state.
ReducedDensityMatrix projector(SpinQuantum spin, const ComplexVector& v);

struct SchmidtSpectrum {
    /// Descending, negatives clipped to 0.
    Eigen::VectorXd eigenvalues;
    /// Column a belongs to eigenvalues(a).
    ComplexMatrix eigenvectors;
    /// Largest |lambda| removed by clipping (0 if nothing was negative).
    double clip_magnitude = 0.0;
};

/// Hermitian eigendecomposition of an RDM. Throws ContractViolation when
/// the input deviates from Hermitian by more than 1e-10.
SchmidtSpectrum schmidt(const ReducedDensityMatrix& rdm);

struct Entropies {
    double von_neumann = 0.0;
    double linear = 0.0;
};

Entropies entropies(const SchmidtSpectrum& spectrum);
Entropies entropies(const Eigen::VectorXd& eigenvalues);

/// |S_V(rho_1) - S_V(rho_2)|.
double subsystem_symmetry_check(const PureState& state);

/// Sample moments of sqrt(N) Re c and sqrt(N) Im c (a GUE vector gives
/// mean 0, variance 1/2) and the one-sample KS statistic of N|c|^2 against
/// the unit exponential CDF 1 - exp(-x).
struct ComponentStats {
    double mean_re = 0.0;
    double var_re = 0.0;
    double mean_im = 0.0;
    double var_im = 0.0;
    double ks_exponential = 0.0;
    std::size_t samples = 0;
};

ComponentStats component_statistics(const ComplexVector& vector);

/// Pools the components of several vectors of common length N.
ComponentStats component_statistics(const std::vector<ComplexVector>& vectors);

/// Exact one-sample Kolmogorov-Smirnov statistic against 1 - exp(-x).
double ks_exponential(std::vector<double> samples);

/// 5% asymptotic KS critical value 1.36 / sqrt(n).
double ks_threshold(std::size_t n);

/// Normalized vector of i.i.d. complex Gaussians.
ComplexVector random_gue_vector(std::size_t n, std::mt19937_64& rng);

} // namespace kicktop
