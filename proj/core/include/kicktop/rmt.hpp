#pragma once

#include <cstddef>

#include "kicktop/spincore.hpp"

namespace kicktop {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// GUE long-time values for an N-dimensional top.
struct RmtPrediction {
    std::size_t n = 0;
    double sv_saturation = 0.0;       // ln N - 1/2
    double sr_saturation = 0.0;       // 1 - (2N+1)/(N^2+2)
    double m2_pure = 0.0;             // 2/(N+1)
    double delta_n_eff_pure = 0.0;    // (N+1)/(2N)
    double delta_n_eff_coupled = 0.0; // (N+1)(N^2+2) / (N(N^2+2N+3))
};

/// Throws std::domain_error for N < 2.
RmtPrediction predictions(std::size_t n);

/// Sine integral; odd in x.
double si(double x);
/// Cosine integral, gamma + ln x + int_0^x (cos t - 1)/t dt. x <= 0 throws.
double ci(double x);
/// Entire cosine integral int_0^x (1 - cos t)/t dt, even in x.
double cin(double x);

/// (1/N^2) sum_{m1,m2} exp(-i eps m1 m2 / j), folded onto m > 0. Real.
double p_epsilon_exact(SpinQuantum spin, double epsilon);

/// (2/N) [1 + Si(N eps / 2) / eps]. At eps = 0 this returns the limit of
/// the expression, 1 + 2/N, which exceeds the exact value 1.
double p_epsilon_closed(std::size_t n, double epsilon);

enum class SrMode { ExactSum, ClosedForm };

/// Long-time linear entropy S_R(n) = 1 - p^{4(n-1)} B.
///
/// ExactSum evaluates p and
///   B = (1/N^4) sum_{l1,l2} (N - |l1|)(N - |l2|) cos(eps l1 l2 / j)
/// directly in O(j^2). ClosedForm replaces both double sums by their
/// integral approximations, written with M = 2j and a = 2 M eps:
///   p = (2N - 1)/N^2 + 4 j Si(j eps) / (N^2 eps)
///   B = [2N^3 - N^2 + 4(N^2 S1 - 2N S2 + S3)] / N^4
///   S1 = M^2 Si(a)/a, S2 = M^3 (1 - cos a)/a^2, S3 = M^4 (1 - cos a - Cin(a))/a^2.
/// n < 1 throws std::invalid_argument.
double sr_analytic(std::size_t n, SpinQuantum spin, double epsilon, SrMode mode);

/// The B factor alone (S_R(1) = 1 - B).
double sr_bracket(SpinQuantum spin, double epsilon, SrMode mode);

/// p(eps) as used by sr_analytic in the given mode.
double sr_p(SpinQuantum spin, double epsilon, SrMode mode);

/// Weak-coupling production rate 2 eps^2 j^2 / 9 per step.
double sr_weak_rate(SpinQuantum spin, double epsilon);

} // namespace kicktop
