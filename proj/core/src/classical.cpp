#include "kicktop/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace kicktop {

namespace {

// Rotation of (Y, Z) by delta about the X axis followed by the pi/2 precession.
SpherePoint rotate(const SpherePoint& p, double delta) {
    const double c = std::cos(delta);
    const double s = std::sin(delta);
    SpherePoint out{p.z * c + p.y * s, -p.z * s + p.y * c, -p.x};
    const double before = p.norm();
    const double after = out.norm();
    if (std::abs(after - before) > 1e-12 && after > 0.0) {
        const double scale = before / after;
        out.x *= scale;
        out.y *= scale;
        out.z *= scale;
    }
    return out;
}

using Mat6 = Eigen::Matrix<double, 6, 6>;

Mat6 poisson_tensor(const std::array<double, 6>& v) {
    Mat6 b = Mat6::Zero();
    for (int block = 0; block < 2; ++block) {
        const int o = 3 * block;
        const double x = v[o], y = v[o + 1], z = v[o + 2];
        b(o + 0, o + 1) = z;
        b(o + 1, o + 0) = -z;
        b(o + 1, o + 2) = x;
        b(o + 2, o + 1) = -x;
        b(o + 2, o + 0) = y;
        b(o + 0, o + 2) = -y;
    }
    return b;
}

} // namespace

double SpherePoint::norm() const { return std::sqrt(x * x + y * y + z * z); }

std::array<double, 6> CoupledClassicalState::to_array() const { return {p1.x, p1.y, p1.z, p2.x, p2.y, p2.z}; }

CoupledClassicalState CoupledClassicalState::from_array(const std::array<double, 6>& v) {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
}

SpherePoint single_map(const SpherePoint& point, double k) { return rotate(point, k * point.x); }

CoupledClassicalState coupled_map(const CoupledClassicalState& state, double k1, double k2, double epsilon) {
    const double delta12 = k1 * state.p1.x + epsilon * state.p2.x;
    const double delta21 = k2 * state.p2.x + epsilon * state.p1.x;
    return {rotate(state.p1, delta12), rotate(state.p2, delta21)};
}

CanonicalCoords to_canonical(const SpherePoint& point) {
    const double r = point.norm();
    const double cos_theta = std::clamp(point.z / r, -1.0, 1.0);
    double phi = 0.0;
    if (point.x != 0.0 || point.y != 0.0) {
        phi = std::atan2(point.y, point.x);
        if (phi == -std::numbers::pi) {
            phi = std::numbers::pi;
        }
    }
    return {cos_theta, phi};
}

SpherePoint from_canonical(const CanonicalCoords& coords) {
    if (!(std::abs(coords.cos_theta) <= 1.0)) {
        throw std::domain_error("from_canonical: |cos theta| must not exceed 1");
    }
    const double sin_theta = std::sqrt((1.0 - coords.cos_theta) * (1.0 + coords.cos_theta));
    return {sin_theta * std::cos(coords.phi), sin_theta * std::sin(coords.phi), coords.cos_theta};
}

SpherePoint sphere_point(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::vector<PortraitSample> phase_portrait(double k, const std::vector<SpherePoint>& initial_conditions,
                                           std::size_t n_iter) {
    if (n_iter < 1) {
        throw std::invalid_argument("phase_portrait: n_iter must be at least 1");
    }
    std::vector<PortraitSample> out;
    out.reserve(initial_conditions.size() * n_iter);
    for (std::size_t orbit = 0; orbit < initial_conditions.size(); ++orbit) {
        SpherePoint p = initial_conditions[orbit];
        for (std::size_t it = 1; it <= n_iter; ++it) {
            p = single_map(p, k);
            out.push_back({orbit, it, to_canonical(p)});
        }
    }
    return out;
}

std::vector<SpherePoint> portrait_grid(std::size_t n_cos_theta, std::size_t n_phi) {
    std::vector<SpherePoint> out;
    out.reserve(n_cos_theta * n_phi);
    for (std::size_t a = 0; a < n_cos_theta; ++a) {
        const double ct = -1.0 + (2.0 * static_cast<double>(a) + 1.0) / static_cast<double>(n_cos_theta);
        for (std::size_t b = 0; b < n_phi; ++b) {
            const double phi =
                -std::numbers::pi + (2.0 * static_cast<double>(b) + 1.0) * std::numbers::pi / static_cast<double>(n_phi);
            out.push_back(from_canonical({ct, phi}));
        }
    }
    return out;
}

double poisson_residual(const CoupledMap& map, const CoupledClassicalState& state, double h) {
    if (!(h >= 1e-7 && h <= 1e-4)) {
        throw std::invalid_argument("poisson_residual: h must lie in [1e-7, 1e-4]");
    }
    const auto x = state.to_array();
    Mat6 jac;
    for (int col = 0; col < 6; ++col) {
        auto plus = x;
        auto minus = x;
        plus[col] += h;
        minus[col] -= h;
        const auto fp = map(CoupledClassicalState::from_array(plus)).to_array();
        const auto fm = map(CoupledClassicalState::from_array(minus)).to_array();
        for (int row = 0; row < 6; ++row) {
            jac(row, col) = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    const auto image = map(state).to_array();
    const Mat6 lhs = jac * poisson_tensor(x) * jac.transpose();
    return (lhs - poisson_tensor(image)).cwiseAbs().maxCoeff();
}

} // namespace kicktop
