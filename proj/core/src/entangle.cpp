#include "kicktop/entangle.hpp"

#include <algorithm>
#include <cmath>

namespace kicktop {

ReducedDensityMatrix reduce(const PureState& state, int subsystem) {
    const auto& psi = state.amplitudes;
    if (subsystem == 1) {
        return {state.spin, psi * psi.adjoint()};
    }
    if (subsystem == 2) {
        return {state.spin, (psi.adjoint() * psi).transpose()};
    }
    throw std::invalid_argument("reduce: subsystem must be 1 or 2");
}

ReducedDensityMatrix projector(SpinQuantum spin, const ComplexVector& v) {
    if (static_cast<std::size_t>(v.size()) != spin.dim()) {
        throw std::invalid_argument("projector: vector length does not match spin");
    }
    return {spin, v * v.adjoint()};
}

SchmidtSpectrum schmidt(const ReducedDensityMatrix& rdm) {
    const auto& rho = rdm.entries;
    if (rho.rows() != rho.cols()) {
        throw ContractViolation("schmidt: density matrix is not square");
    }
    const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        throw ContractViolation("schmidt: density matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("schmidt: eigensolver did not converge");
    }
    const auto n = rho.rows();
    SchmidtSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    // Eigen sorts ascending.
    for (Eigen::Index a = 0; a < n; ++a) {
        const Eigen::Index src = n - 1 - a;
        double lambda = solver.eigenvalues()(src);
        if (lambda < 0.0) {
            out.clip_magnitude = std::max(out.clip_magnitude, -lambda);
            lambda = 0.0;
        }
        out.eigenvalues(a) = lambda;
        out.eigenvectors.col(a) = solver.eigenvectors().col(src);
    }
    return out;
}

Entropies entropies(const Eigen::VectorXd& eigenvalues) {
    Entropies out;
    double purity = 0.0;
    for (const double lambda : eigenvalues) {
        if (lambda > 0.0) {
            out.von_neumann -= lambda * std::log(lambda);
        }
        purity += lambda * lambda;
    }
    out.linear = 1.0 - purity;
    return out;
}

Entropies entropies(const SchmidtSpectrum& spectrum) { return entropies(spectrum.eigenvalues); }

double subsystem_symmetry_check(const PureState& state) {
    const double s1 = entropies(schmidt(reduce(state, 1))).von_neumann;
    const double s2 = entropies(schmidt(reduce(state, 2))).von_neumann;
    return std::abs(s1 - s2);
}

double ks_exponential(std::vector<double> samples) {
    if (samples.empty()) {
        throw std::invalid_argument("ks_exponential: no samples");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = -std::expm1(-std::max(samples[i], 0.0));
        d = std::max({d, cdf - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - cdf});
    }
    return d;
}

double ks_threshold(std::size_t n) { return 1.36 / std::sqrt(static_cast<double>(n)); }

ComponentStats component_statistics(const std::vector<ComplexVector>& vectors) {
    if (vectors.empty()) {
        throw std::invalid_argument("component_statistics: no vectors");
    }
    const auto dim = vectors.front().size();
    const double scale = std::sqrt(static_cast<double>(dim));
    std::vector<double> re, im, intensity;
    for (const auto& v : vectors) {
        if (v.size() != dim) {
            throw std::invalid_argument("component_statistics: vectors differ in length");
        }
        for (Eigen::Index i = 0; i < dim; ++i) {
            re.push_back(scale * v(i).real());
            im.push_back(scale * v(i).imag());
            intensity.push_back(static_cast<double>(dim) * std::norm(v(i)));
        }
    }

    auto moments = [](const std::vector<double>& xs) {
        double mean = 0.0;
        for (const double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (const double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(xs.size());
        return std::pair{mean, var};
    };

    ComponentStats out;
    std::tie(out.mean_re, out.var_re) = moments(re);
    std::tie(out.mean_im, out.var_im) = moments(im);
    out.samples = intensity.size();
    out.ks_exponential = ks_exponential(std::move(intensity));
    return out;
}

ComponentStats component_statistics(const ComplexVector& vector) {
    return component_statistics(std::vector<ComplexVector>{vector});
}

ComplexVector random_gue_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v(i) = cplx(re, im);
    }
    return v / v.norm();
}

} // namespace kicktop
