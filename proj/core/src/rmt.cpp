#include "kicktop/rmt.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace kicktop {

RmtPrediction predictions(std::size_t n) {
    if (n < 2) {
        throw std::domain_error("predictions: N must be at least 2");
    }
    const double N = static_cast<double>(n);
    RmtPrediction out;
    out.n = n;
    out.sv_saturation = std::log(N) - 0.5;
    out.sr_saturation = 1.0 - (2.0 * N + 1.0) / (N * N + 2.0);
    out.m2_pure = 2.0 / (N + 1.0);
    out.delta_n_eff_pure = (N + 1.0) / (2.0 * N);
    out.delta_n_eff_coupled = (N + 1.0) * (N * N + 2.0) / (N * (N * N + 2.0 * N + 3.0));
    return out;
}

namespace {

constexpr double kSeriesLimit = 4.0;

// Si(x) and Cin(x) by their Taylor series; fine for |x| <= 4.
double si_series(double x) {
    const double x2 = x * x;
    double term = x; // x^{2k+1} / (2k+1)!
    double sum = x;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        const double add = term / (2.0 * k + 1.0);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

double cin_series(double x) {
    const double x2 = x * x;
    double term = 1.0; // (-1)^{k+1} x^{2k} / (2k)!
    double sum = 0.0;
    for (int k = 1; k < 60; ++k) {
        term *= -x2 / ((2.0 * k - 1.0) * (2.0 * k));
        const double add = -term / (2.0 * k);
        sum += add;
        if (std::abs(add) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// E1(ix) by the Lentz continued fraction, x > 0 moderately large.
std::complex<double> e1_imaginary(double x) {
    using C = std::complex<double>;
    constexpr double tiny = 1e-300;
    C b(1.0, x);
    C c(1.0 / tiny, 0.0);
    C d = 1.0 / b;
    C h = d;
    for (int i = 1; i < 1000; ++i) {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const C del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * C(std::cos(x), -std::sin(x));
}

} // namespace

double si(double x) {
    const double ax = std::abs(x);
    double value;
    if (ax <= kSeriesLimit) {
        value = si_series(ax);
    } else {
        value = std::numbers::pi / 2 + e1_imaginary(ax).imag();
    }
    return x < 0.0 ? -value : value;
}

double ci(double x) {
    if (!(x > 0.0)) {
        throw std::domain_error("ci: argument must be positive");
    }
    if (x <= kSeriesLimit) {
        return kEulerGamma + std::log(x) - cin_series(x);
    }
    return -e1_imaginary(x).real();
}

double cin(double x) {
    const double ax = std::abs(x);
    if (ax <= kSeriesLimit) {
        return cin_series(ax);
    }
    return kEulerGamma + std::log(ax) + e1_imaginary(ax).real();
}

double p_epsilon_exact(SpinQuantum spin, double epsilon) {
    const std::size_t n = spin.dim();
    const double j = spin.j();
    if (spin.two_j() == 0) {
        return 1.0;
    }
    // Array indices of the strictly positive m.
    const std::size_t first = spin.dim() / 2 + (spin.is_integer() ? 1 : 0);
    double sum = 0.0;
    for (std::size_t a = first; a < n; ++a) {
        const double m1 = spin.m(a);
        for (std::size_t b = first; b < n; ++b) {
            sum += std::cos(epsilon * m1 * spin.m(b) / j);
        }
    }
    const double zero_cross = spin.is_integer() ? 2.0 * static_cast<double>(n) - 1.0 : 0.0;
    const double N = static_cast<double>(n);
    return (zero_cross + 4.0 * sum) / (N * N);
}

double p_epsilon_closed(std::size_t n, double epsilon) {
    const double N = static_cast<double>(n);
    if (epsilon == 0.0) {
        return 1.0 + 2.0 / N;
    }
    return (2.0 / N) * (1.0 + si(0.5 * N * epsilon) / epsilon);
}

double sr_p(SpinQuantum spin, double epsilon, SrMode mode) {
    if (mode == SrMode::ExactSum) {
        return p_epsilon_exact(spin, epsilon);
    }
    const double eps = std::abs(epsilon);
    if (eps == 0.0 || spin.two_j() == 0) {
        return 1.0;
    }
    const double N = static_cast<double>(spin.dim());
    const double j = spin.j();
    return (2.0 * N - 1.0) / (N * N) + 4.0 * j * si(j * eps) / (N * N * eps);
}

double sr_bracket(SpinQuantum spin, double epsilon, SrMode mode) {
    const double N = static_cast<double>(spin.dim());
    const double j = spin.j();
    const int big_m = spin.two_j();
    if (big_m == 0 || epsilon == 0.0) {
        return 1.0;
    }
    const double head = 2.0 * N * N * N - N * N;
    if (mode == SrMode::ExactSum) {
        double sum = 0.0;
        for (int l1 = 1; l1 <= big_m; ++l1) {
            const double w1 = N - l1;
            for (int l2 = 1; l2 <= big_m; ++l2) {
                sum += w1 * (N - l2) * std::cos(epsilon * l1 * l2 / j);
            }
        }
        return (head + 4.0 * sum) / (N * N * N * N);
    }
    const double eps = std::abs(epsilon);
    const double M = static_cast<double>(big_m);
    const double a = 2.0 * M * eps;
    const double half_sin = std::sin(0.5 * a);
    const double one_minus_cos = 2.0 * half_sin * half_sin;
    const double s1 = M * M * si(a) / a;
    const double s2 = M * M * M * one_minus_cos / (a * a);
    const double s3 = M * M * M * M * (one_minus_cos - cin(a)) / (a * a);
    return (head + 4.0 * (N * N * s1 - 2.0 * N * s2 + s3)) / (N * N * N * N);
}

double sr_analytic(std::size_t n, SpinQuantum spin, double epsilon, SrMode mode) {
    if (n < 1) {
        throw std::invalid_argument("sr_analytic: step index must be at least 1");
    }
    if (epsilon == 0.0) {
        return 0.0;
    }
    const double p = sr_p(spin, epsilon, mode);
    const double b = sr_bracket(spin, epsilon, mode);
    return 1.0 - std::pow(p, 4.0 * static_cast<double>(n - 1)) * b;
}

double sr_weak_rate(SpinQuantum spin, double epsilon) {
    const double j = spin.j();
    return 2.0 * epsilon * epsilon * j * j / 9.0;
}

} // namespace kicktop
