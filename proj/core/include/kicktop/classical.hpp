#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace kicktop {

struct SpherePoint {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    double norm() const;
    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

/// (cos theta, phi) with phi in (-pi, pi].
struct CanonicalCoords {
    double cos_theta = 1.0;
    double phi = 0.0;
};

struct CoupledClassicalState {
    SpherePoint p1;
    SpherePoint p2;

    std::array<double, 6> to_array() const;
    static CoupledClassicalState from_array(const std::array<double, 6>& v);
};

/// One period of the classical kicked top with p = pi/2:
///   X' = Z cos(kX) + Y sin(kX), Y' = -Z sin(kX) + Y cos(kX), Z' = -X.
SpherePoint single_map(const SpherePoint& point, double k);

/// Coupled-top map. The rotation angle on each sphere mixes in the other
/// top's X: Delta_12 = k1 X1 + eps X2, Delta_21 = k2 X2 + eps X1.
CoupledClassicalState coupled_map(const CoupledClassicalState& state, double k1, double k2, double epsilon);

CanonicalCoords to_canonical(const SpherePoint& point);
/// Throws std::domain_error if |cos_theta| > 1.
SpherePoint from_canonical(const CanonicalCoords& coords);

/// Point on the sphere from polar angles (theta, phi).
SpherePoint sphere_point(double theta, double phi);

struct PortraitSample {
    std::size_t orbit = 0;
    std::size_t iteration = 0;
    CanonicalCoords coords;
};

/// Raw orbits of the single top, n_iter samples per initial condition
/// (the initial point itself is not emitted).
std::vector<PortraitSample> phase_portrait(double k, const std::vector<SpherePoint>& initial_conditions,
                                           std::size_t n_iter);

/// Uniform cos(theta) x phi midpoint lattice of initial conditions.
std::vector<SpherePoint> portrait_grid(std::size_t n_cos_theta, std::size_t n_phi);

using CoupledMap = std::function<CoupledClassicalState(const CoupledClassicalState&)>;

/// max |J B(x) J^T - B(x')| for the 6x6 central-difference Jacobian J of map
/// at x, with B the spin Poisson tensor ({X, Y} = Z cyclic on each sphere,
/// nothing across spheres). h must lie in [1e-7, 1e-4].
double poisson_residual(const CoupledMap& map, const CoupledClassicalState& state, double h = 1e-6);

} // namespace kicktop
