#include "kedlab/grid.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "kedlab/errors.hpp"
#include "kedlab/util.hpp"

namespace kedlab {

double sphere_surface(int dim) {
    if (dim < 1) throw DomainError("sphere_surface: dimension must be positive");
    switch (dim) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi;
        default:
            return 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
    }
}

RadialGrid log_radial_grid(int dim, double r_min, double r_max, std::size_t n,
                           double cusp_exponent) {
    if (dim < 1) throw DomainError("grid: dimension must be positive");
    if (!(r_min > 0.0) || !(r_max > r_min)) throw DomainError("grid: need 0 < r_min < r_max");
    if (n < 8) throw DomainError("grid: need at least 8 nodes");
    if (!(dim + cusp_exponent > 0.0))
        throw DomainError("grid: cusp exponent makes the origin panel non-integrable");

    RadialGrid g;
    g.dim = dim;
    g.scheme = "log-trapezoid";
    g.nodes = log_spaced(r_min, r_max, n);
    g.weights.resize(n);

    // Trapezoid in x = ln r; the measure S_D r^{D-1} dr becomes S_D r^D dx.
    const double s = sphere_surface(dim);
    const double dx = (std::log(r_max) - std::log(r_min)) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double tw = (i == 0 || i == n - 1) ? 0.5 * dx : dx;
        g.weights[i] = tw * s * std::pow(g.nodes[i], dim);
    }
    // Closure panel for [0, r_min]: the integrand is treated as
    // f(r_min) (r/r_min)^cusp there, exact to the next order in r_min.
    g.weights[0] += s * std::pow(r_min, dim) / (dim + cusp_exponent);
    return g;
}

RadialGrid cell_grid(const RadialProfile& profile, std::size_t n) {
    if (!profile.periodic()) throw DomainError("cell_grid: profile is not periodic");
    if (n < 8) throw DomainError("grid: need at least 8 nodes");
    const double period = profile.decay().period;
    RadialGrid g;
    g.dim = profile.dim();
    g.scheme = "cell-midpoint";
    g.nodes.resize(n);
    g.weights.assign(n, period / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        g.nodes[i] = period * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return g;
}

RadialGrid default_grid(const RadialProfile& profile, std::size_t n) {
    if (profile.periodic()) return cell_grid(profile, n);
    const double cusp = profile.decay().cls == DecayClass::PolyExponential
                            ? profile.decay().prefactor_degree
                            : 0.0;
    return log_radial_grid(profile.dim(), 1e-6, profile.suggested_r_max(), n, cusp);
}

double integrate(const std::function<double(double)>& f, const RadialGrid& grid) {
    CompensatedSum sum;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(grid.nodes[i]);
        if (!std::isfinite(v))
            throw DomainError("integrate: non-finite sample at r = " + fmt_g(grid.nodes[i]));
        sum.add(grid.weights[i] * v);
    }
    return sum.value();
}

void write_grid_csv(const RadialGrid& grid, std::ostream& os) {
    os << "# scheme=" << grid.scheme << " dim=" << grid.dim << "\n";
    os << "r,w\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << fmt_g(grid.nodes[i], 17) << ',' << fmt_g(grid.weights[i], 17) << "\n";
}

RadialGrid read_grid_csv(std::istream& is) {
    RadialGrid g;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string tok;
            while (meta >> tok) {
                if (tok.rfind("scheme=", 0) == 0) g.scheme = tok.substr(7);
                if (tok.rfind("dim=", 0) == 0) g.dim = std::stoi(tok.substr(4));
            }
            continue;
        }
        if (!header_seen) {
            if (line != "r,w") throw DomainError("grid csv: expected header \"r,w\"");
            header_seen = true;
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("grid csv: malformed row \"" + line + "\"");
        try {
            g.nodes.push_back(std::stod(line.substr(0, comma)));
            g.weights.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw DomainError("grid csv: malformed row \"" + line + "\"");
        }
    }
    if (g.nodes.empty()) throw DomainError("grid csv: no rows");
    return g;
}

void write_profile_csv(const RadialProfile& profile, const RadialGrid& grid, std::ostream& os) {
    os << "# profile=" << profile.id() << "\n";
    os << "r,rho,g1,g2,g3,g4,g5,g6\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid.nodes[i];
        os << fmt_g(r, 17) << ',' << fmt_g(profile.value(r), 17);
        for (int k = 1; k <= RadialProfile::kMaxDerivOrder; ++k)
            os << ',' << fmt_g(profile.deriv(k, r), 17);
        os << "\n";
    }
}

} // namespace kedlab
