#pragma once

#include <cstddef>
#include <functional>
#include <numbers>

#include "kicktop/spincore.hpp"

namespace kicktop {

/// One kicked top: precession by p = pi/2 about y, then a torsion kick of
/// strength k about z.
struct TopParams {
    SpinQuantum spin;
    double k = 0.0;
    static constexpr double precession = std::numbers::pi / 2;
};

/// Two tops of equal spin with J_z1 J_z2 coupling of strength epsilon / j.
struct CoupledParams {
    TopParams top1;
    TopParams top2;
    double epsilon = 0.0;

    SpinQuantum spin() const { return top1.spin; }
};

/// <s|U|m> = exp(-i k s^2 / 2j) d_{s m}(pi/2): rotate first, then kick.
class SinglePropagator {
  public:
    explicit SinglePropagator(const TopParams& params);

    SpinQuantum spin() const noexcept { return rotation_.spin; }
    const ComplexVector& kick_phases() const noexcept { return kick_phases_; }
    const WignerHalfPiMatrix& rotation() const noexcept { return rotation_; }

    /// Dense N x N matrix of the propagator.
    ComplexMatrix matrix() const;

    ComplexVector apply(const ComplexVector& v) const;
    /// U^dagger v.
    ComplexVector apply_adjoint(const ComplexVector& v) const;

  private:
    ComplexVector kick_phases_;
    WignerHalfPiMatrix rotation_;
};

SinglePropagator build_single_propagator(const TopParams& params);

/// Joint pure state with amplitudes(idx(m1), idx(m2)) = <m1, m2|psi>.
struct PureState {
    SpinQuantum spin;
    ComplexMatrix amplitudes;

    double norm() const { return amplitudes.norm(); }
};

PureState initial_product_state(SpinQuantum spin, double theta1, double phi1, double theta2, double phi2);

/// Applies U1 along axis 1, U2 along axis 2, then the diagonal coupling
/// phases exp(-i eps s1 s2 / j). Throws std::invalid_argument when the
/// spins of state and propagators disagree.
PureState coupled_step(const PureState& state, const SinglePropagator& prop1, const SinglePropagator& prop2,
                       double epsilon);

/// Exact inverse of coupled_step.
PureState coupled_step_adjoint(const PureState& state, const SinglePropagator& prop1,
                               const SinglePropagator& prop2, double epsilon);

/// Floquet operator U_eps (U1 x U2) prepared once for repeated stepping.
///
/// Both kicks and the coupling are diagonal in the product basis, so a step
/// is psi -> Phi o (d psi d^T) with one combined N x N phase table Phi and two
/// real-by-complex matrix products.
class CoupledPropagator {
  public:
    explicit CoupledPropagator(const CoupledParams& params);

    SpinQuantum spin() const noexcept { return params_.spin(); }
    const CoupledParams& params() const noexcept { return params_; }

    void step(PureState& state) const;

  private:
    CoupledParams params_;
    RealMatrix rotation_;
    RealMatrix rotation_t_;
    ComplexMatrix phases_;
    // scratch for the real/imaginary split
    mutable RealMatrix re_, im_, tmp_re_, tmp_im_;
};

using StepObserver = std::function<void(std::size_t step, const PureState& state)>;
using VectorObserver = std::function<void(std::size_t step, const ComplexVector& state)>;

/// Runs n_steps Floquet periods. The observer sees steps 1..n_steps in order;
/// exceptions thrown by it propagate out unchanged.
PureState evolve(PureState state, const CoupledParams& params, std::size_t n_steps,
                 const StepObserver& observer = {});

/// Single-top counterpart of evolve.
ComplexVector evolve_single(ComplexVector state, const TopParams& params, std::size_t n_steps,
                            const VectorObserver& observer = {});

} // namespace kicktop
