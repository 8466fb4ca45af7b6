#ifndef KEDLAB_GRID_HPP
#define KEDLAB_GRID_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "kedlab/profiles.hpp"

namespace kedlab {

/// Surface of the unit sphere in D dimensions: 2, 2*pi, 4*pi, ...
double sphere_surface(int dim);

/// Quadrature nodes and weights.  Weights carry the full radial measure
/// S_D r^{D-1} dr (S_1 = 2 accounts for the even-symmetric full line), so
/// sum_i w_i f(r_i) approximates the D-dimensional integral of f.
struct RadialGrid {
    int dim = 3;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::string scheme;

    std::size_t size() const { return nodes.size(); }
};

/// Log-spaced nodes on [r_min, r_max], trapezoidal in x = ln r, plus a
/// closure weight on the first node covering the measure of [0, r_min].
/// `cusp_exponent` is the power of r the integrand behaves like near the
/// origin (non-zero only for cusped densities); the panel weight uses it
/// so the captured mass is exact to the next order in r_min.
RadialGrid log_radial_grid(int dim, double r_min, double r_max, std::size_t n,
                           double cusp_exponent = 0.0);

/// Midpoint rule over one period [0, L) of a periodic profile.
RadialGrid cell_grid(const RadialProfile& profile, std::size_t n);

/// Grid matched to a profile's decay: 2000-point log grid up to the
/// profile's suggested radius for localized densities, one cell for
/// periodic ones.
RadialGrid default_grid(const RadialProfile& profile, std::size_t n = 2000);

/// Compensated fixed-order sum of w_i * f(r_i).  A non-finite sample
/// aborts with the offending node location.
double integrate(const std::function<double(double)>& f, const RadialGrid& grid);

/// CSV schema "r,w" with a scheme/dim comment header; exact round trip of
/// node and weight values.
void write_grid_csv(const RadialGrid& grid, std::ostream& os);
RadialGrid read_grid_csv(std::istream& is);

/// CSV dump of a profile on a grid: columns r,rho,g1..g6.
void write_profile_csv(const RadialProfile& profile, const RadialGrid& grid,
                       std::ostream& os);

} // namespace kedlab

#endif
