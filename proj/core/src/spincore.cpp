#include "kicktop/spincore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kicktop {

SpinQuantum::SpinQuantum(int two_j) : two_j_(two_j) {
    if (two_j < 0) {
        throw std::domain_error("SpinQuantum: 2j must be non-negative, got " + std::to_string(two_j));
    }
}

SpinQuantum SpinQuantum::from_j(double j) {
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (!(j >= 0.0) || std::abs(twice - rounded) > 1e-9) {
        throw std::domain_error("SpinQuantum: j must be a non-negative multiple of 1/2");
    }
    return SpinQuantum(static_cast<int>(rounded));
}

LogFactorialTable::LogFactorialTable(std::size_t max_n) : values_(max_n + 1, 0.0) {
    for (std::size_t n = 2; n <= max_n; ++n) {
        values_[n] = values_[n - 1] + std::log(static_cast<double>(n));
    }
}

double LogFactorialTable::operator()(std::size_t n) const {
    if (n >= values_.size()) {
        throw std::out_of_range("LogFactorialTable: n = " + std::to_string(n) + " beyond table size " +
                                std::to_string(values_.size() - 1));
    }
    return values_[n];
}

double log_binomial(const LogFactorialTable& table, long long n, long long k) {
    if (n < 0 || k < 0 || k > n) {
        throw std::domain_error("log_binomial: need 0 <= k <= n, got n = " + std::to_string(n) +
                                ", k = " + std::to_string(k));
    }
    const auto big = static_cast<std::size_t>(std::max(k, n - k));
    const auto small = static_cast<std::size_t>(std::min(k, n - k));
    return table(static_cast<std::size_t>(n)) - table(big) - table(small);
}

double log_binomial(long long n, long long k) {
    static const LogFactorialTable shared(4096);
    if (n >= 0 && static_cast<std::size_t>(n) > shared.max_n()) {
        return log_binomial(LogFactorialTable(static_cast<std::size_t>(n)), n, k);
    }
    return log_binomial(shared, n, k);
}

WignerHalfPiMatrix wigner_d_half_pi(SpinQuantum spin) {
    const std::size_t dim = spin.dim();
    const int two_j = spin.two_j();
    const double j = spin.j();
    const LogFactorialTable table(static_cast<std::size_t>(two_j));

    WignerHalfPiMatrix out{spin, RealMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};

    // Columns 0..last have m <= 0.
    const std::size_t last = (dim - 1) / 2;
    std::vector<double> v(last + 1);

    for (std::size_t s_idx = 0; s_idx < dim; ++s_idx) {
        const double s = spin.m(s_idx);
        v[0] = 1.0;
        if (last >= 1) {
            v[1] = 2.0 * s;
        }
        // (j - m + 1) V_{m-1} - 2 s V_m + (j + m + 1) V_{m+1} = 0
        for (std::size_t b = 1; b < last; ++b) {
            const double m = spin.m(b);
            v[b + 1] = (2.0 * s * v[b] - (j - m + 1.0) * v[b - 1]) / (j + m + 1.0);
        }

        const double log_row = -j * std::numbers::ln2 + 0.5 * log_binomial(table, two_j, spin.j_minus_m(s_idx));
        for (std::size_t b = 0; b <= last; ++b) {
            const double log_pref = log_row - 0.5 * log_binomial(table, two_j, spin.j_plus_m(b));
            // s - m is an integer; (-1)^{s-m}
            const int s_minus_m = (spin.two_m(s_idx) - spin.two_m(b)) / 2;
            const double sign = (s_minus_m % 2 == 0) ? 1.0 : -1.0;
            out.entries(static_cast<Eigen::Index>(s_idx), static_cast<Eigen::Index>(b)) =
                sign * std::exp(log_pref) * v[b];
        }

        const int j_plus_s = spin.j_plus_m(s_idx);
        const double reflect = (j_plus_s % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t b = last + 1; b < dim; ++b) {
            out.entries(static_cast<Eigen::Index>(s_idx), static_cast<Eigen::Index>(b)) =
                reflect * out.entries(static_cast<Eigen::Index>(s_idx), static_cast<Eigen::Index>(dim - 1 - b));
        }
    }
    return out;
}

ComplexVector coherent_amplitudes(SpinQuantum spin, double theta0, double phi0) {
    if (!(theta0 >= 0.0 && theta0 <= std::numbers::pi)) {
        throw std::domain_error("coherent_amplitudes: theta0 must lie in [0, pi]");
    }
    const std::size_t dim = spin.dim();
    const LogFactorialTable table(static_cast<std::size_t>(spin.two_j()));
    // cos(pi/2) is 6e-17 in floating point; the pole is exact.
    const double c = (theta0 == std::numbers::pi) ? 0.0 : std::cos(0.5 * theta0);
    const double s = std::sin(0.5 * theta0);

    ComplexVector out(static_cast<Eigen::Index>(dim));
    for (std::size_t idx = 0; idx < dim; ++idx) {
        const int up = spin.j_plus_m(idx);   // power of cos
        const int down = spin.j_minus_m(idx); // power of sin
        double magnitude = 0.0;
        if ((up == 0 || c > 0.0) && (down == 0 || s > 0.0)) {
            double log_mag = 0.5 * log_binomial(table, spin.two_j(), up);
            if (up > 0) log_mag += up * std::log(c);
            if (down > 0) log_mag += down * std::log(s);
            magnitude = std::exp(log_mag);
        }
        out(static_cast<Eigen::Index>(idx)) = std::polar(magnitude, down * phi0);
    }
    // Analytically normalised; this only removes rounding from the log-space sum.
    out /= out.norm();
    return out;
}

} // namespace kicktop
