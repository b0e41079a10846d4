#include "kicktop/evolve.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kicktop {

namespace {

void require_kickable(SpinQuantum spin) {
    if (spin.two_j() < 1) {
        throw std::domain_error("kicked top needs j >= 1/2");
    }
}

void require_same_spin(SpinQuantum a, SpinQuantum b, const char* where) {
    if (a != b) {
        throw std::invalid_argument(std::string(where) + ": spin mismatch (2j = " + std::to_string(a.two_j()) +
                                    " vs " + std::to_string(b.two_j()) + ")");
    }
}

cplx coupling_phase(SpinQuantum spin, std::size_t a, std::size_t b, double epsilon) {
    return std::polar(1.0, -epsilon * spin.m(a) * spin.m(b) / spin.j());
}

} // namespace

SinglePropagator::SinglePropagator(const TopParams& params) : rotation_(wigner_d_half_pi(params.spin)) {
    require_kickable(params.spin);
    const SpinQuantum spin = params.spin;
    kick_phases_.resize(static_cast<Eigen::Index>(spin.dim()));
    for (std::size_t s = 0; s < spin.dim(); ++s) {
        const double m = spin.m(s);
        kick_phases_(static_cast<Eigen::Index>(s)) = std::polar(1.0, -params.k * m * m / (2.0 * spin.j()));
    }
}

ComplexMatrix SinglePropagator::matrix() const {
    return kick_phases_.asDiagonal() * rotation_.entries.cast<cplx>();
}

ComplexVector SinglePropagator::apply(const ComplexVector& v) const {
    if (v.size() != kick_phases_.size()) {
        throw std::invalid_argument("SinglePropagator::apply: vector length mismatch");
    }
    ComplexVector rotated = rotation_.entries * v;
    return kick_phases_.cwiseProduct(rotated);
}

ComplexVector SinglePropagator::apply_adjoint(const ComplexVector& v) const {
    if (v.size() != kick_phases_.size()) {
        throw std::invalid_argument("SinglePropagator::apply_adjoint: vector length mismatch");
    }
    ComplexVector unkicked = kick_phases_.conjugate().cwiseProduct(v);
    return rotation_.entries.transpose() * unkicked;
}

SinglePropagator build_single_propagator(const TopParams& params) { return SinglePropagator(params); }

PureState initial_product_state(SpinQuantum spin, double theta1, double phi1, double theta2, double phi2) {
    const ComplexVector c1 = coherent_amplitudes(spin, theta1, phi1);
    const ComplexVector c2 = coherent_amplitudes(spin, theta2, phi2);
    return PureState{spin, c1 * c2.transpose()};
}

PureState coupled_step(const PureState& state, const SinglePropagator& prop1, const SinglePropagator& prop2,
                       double epsilon) {
    require_same_spin(state.spin, prop1.spin(), "coupled_step");
    require_same_spin(state.spin, prop2.spin(), "coupled_step");
    const auto n = static_cast<Eigen::Index>(state.spin.dim());
    if (state.amplitudes.rows() != n || state.amplitudes.cols() != n) {
        throw std::invalid_argument("coupled_step: amplitude tensor has the wrong shape");
    }

    ComplexMatrix out = prop1.matrix() * state.amplitudes * prop2.matrix().transpose();
    for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index a = 0; a < n; ++a) {
            out(a, b) *= coupling_phase(state.spin, static_cast<std::size_t>(a), static_cast<std::size_t>(b), epsilon);
        }
    }
    return PureState{state.spin, std::move(out)};
}

PureState coupled_step_adjoint(const PureState& state, const SinglePropagator& prop1,
                               const SinglePropagator& prop2, double epsilon) {
    require_same_spin(state.spin, prop1.spin(), "coupled_step_adjoint");
    require_same_spin(state.spin, prop2.spin(), "coupled_step_adjoint");
    const auto n = static_cast<Eigen::Index>(state.spin.dim());
    if (state.amplitudes.rows() != n || state.amplitudes.cols() != n) {
        throw std::invalid_argument("coupled_step_adjoint: amplitude tensor has the wrong shape");
    }

    ComplexMatrix in = state.amplitudes;
    for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index a = 0; a < n; ++a) {
            in(a, b) *= std::conj(
                coupling_phase(state.spin, static_cast<std::size_t>(a), static_cast<std::size_t>(b), epsilon));
        }
    }
    ComplexMatrix out = prop1.matrix().adjoint() * in * prop2.matrix().conjugate();
    return PureState{state.spin, std::move(out)};
}

CoupledPropagator::CoupledPropagator(const CoupledParams& params) : params_(params) {
    require_same_spin(params.top1.spin, params.top2.spin, "CoupledPropagator");
    const SinglePropagator p1(params.top1);
    const SinglePropagator p2(params.top2);
    const SpinQuantum spin = params.spin();
    const auto n = static_cast<Eigen::Index>(spin.dim());

    rotation_ = p1.rotation().entries;
    rotation_t_ = rotation_.transpose();
    phases_.resize(n, n);
    for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index a = 0; a < n; ++a) {
            phases_(a, b) = p1.kick_phases()(a) * p2.kick_phases()(b) *
                            coupling_phase(spin, static_cast<std::size_t>(a), static_cast<std::size_t>(b),
                                           params.epsilon);
        }
    }
}

void CoupledPropagator::step(PureState& state) const {
    require_same_spin(state.spin, spin(), "CoupledPropagator::step");
    const auto n = phases_.rows();
    if (state.amplitudes.rows() != n || state.amplitudes.cols() != n) {
        throw std::invalid_argument("CoupledPropagator::step: amplitude tensor has the wrong shape");
    }
    re_ = state.amplitudes.real();
    im_ = state.amplitudes.imag();
    tmp_re_.noalias() = rotation_ * re_;
    tmp_im_.noalias() = rotation_ * im_;
    re_.noalias() = tmp_re_ * rotation_t_;
    im_.noalias() = tmp_im_ * rotation_t_;
    for (Eigen::Index b = 0; b < n; ++b) {
        for (Eigen::Index a = 0; a < n; ++a) {
            state.amplitudes(a, b) = phases_(a, b) * cplx(re_(a, b), im_(a, b));
        }
    }
}

PureState evolve(PureState state, const CoupledParams& params, std::size_t n_steps, const StepObserver& observer) {
    if (n_steps < 1) {
        throw std::invalid_argument("evolve: n_steps must be at least 1");
    }
    const CoupledPropagator prop(params);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        prop.step(state);
        if (observer) {
            observer(step, state);
        }
    }
    return state;
}

ComplexVector evolve_single(ComplexVector state, const TopParams& params, std::size_t n_steps,
                            const VectorObserver& observer) {
    if (n_steps < 1) {
        throw std::invalid_argument("evolve_single: n_steps must be at least 1");
    }
    const SinglePropagator prop(params);
    for (std::size_t step = 1; step <= n_steps; ++step) {
        state = prop.apply(state);
        if (observer) {
            observer(step, state);
        }
    }
    return state;
}

} // namespace kicktop
