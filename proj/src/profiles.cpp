#include "kedlab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "kedlab/errors.hpp"
#include "kedlab/grid.hpp"
#include "kedlab/util.hpp"

namespace kedlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double poly_eval(const LaurentPoly& p, double r) {
    double acc = 0.0;
    for (const auto& [e, c] : p) acc += c * std::pow(r, e);
    return acc;
}

// Derivative chain of amp * p(r) * core(r) where
//   core = r^beta exp(-b r - alpha r^2),  core'/core = beta/r - b - 2 alpha r.
// Odd steps apply d/dr, even steps add the radial divergence (D-1)/r.
LaurentPoly chain_step(const LaurentPoly& p, int step, int dim, double beta, double b,
                       double alpha) {
    std::map<int, double> acc;
    for (const auto& [e, c] : p) {
        if (e != 0) acc[e - 1] += c * e;
        if (beta != 0.0) acc[e - 1] += c * beta;
        if (b != 0.0) acc[e] -= c * b;
        if (alpha != 0.0) acc[e + 1] -= 2.0 * alpha * c;
    }
    if (step % 2 == 0 && dim > 1)
        for (const auto& [e, c] : p) acc[e - 1] += c * (dim - 1);

    LaurentPoly out;
    out.reserve(acc.size());
    for (const auto& [e, c] : acc)
        if (c != 0.0) out.emplace_back(e, c);
    return out;
}

std::string fmt_param(double v) { return fmt_g(v); }

} // namespace

void RadialProfile::build_chain() {
    pre_[0] = LaurentPoly{{0, 1.0}};
    const double beta = decay_.cls == DecayClass::PolyExponential ? decay_.prefactor_degree : 0.0;
    const double b = decay_.cls == DecayClass::Gaussian ? 0.0 : decay_.rate;
    const double alpha = decay_.cls == DecayClass::Gaussian ? decay_.rate : 0.0;
    for (int k = 1; k <= kMaxDerivOrder; ++k)
        pre_[k] = chain_step(pre_[k - 1], k, dim_, beta, b, alpha);
}

double RadialProfile::log_core(double r) const {
    switch (decay_.cls) {
        case DecayClass::Exponential: return -decay_.rate * r;
        case DecayClass::Gaussian: return -decay_.rate * r * r;
        case DecayClass::PolyExponential:
            return decay_.prefactor_degree * std::log(r) - decay_.rate * r;
        case DecayClass::PeriodicCosine: break;
    }
    throw DomainError("log_core: periodic profiles have no exponential core");
}

double RadialProfile::prefactor(int k, double r) const { return poly_eval(pre_[k], r); }

double RadialProfile::value(double r) const { return deriv(0, r); }

double RadialProfile::log_value(double r) const {
    if (periodic()) return std::log(value(r));
    if (!(r > 0.0)) throw DomainError("profile: r must be positive");
    return std::log(amp_) + log_core(r);
}

double RadialProfile::deriv(int k, double r) const {
    if (k < 0 || k > kMaxDerivOrder)
        throw DomainError("profile: derivative order must lie in [0, 6]");
    if (periodic()) {
        if (r < 0.0) throw DomainError("profile: r must be non-negative for periodic profiles");
        const double w = 2.0 * kPi / decay_.period;
        const double base = -decay_.rho0 * decay_.modulation * std::pow(w, k) *
                            std::cos(w * r + k * kPi / 2.0);
        return k == 0 ? decay_.rho0 + base : base;
    }
    if (!(r > 0.0)) throw DomainError("profile: r must be positive");
    return prefactor(k, r) * amp_ * std::exp(log_core(r));
}

double RadialProfile::log_abs_deriv(int k, double r) const {
    if (k < 0 || k > kMaxDerivOrder)
        throw DomainError("profile: derivative order must lie in [0, 6]");
    if (periodic()) {
        const double g = deriv(k, r);
        return g == 0.0 ? -kInf : std::log(std::abs(g));
    }
    if (!(r > 0.0)) throw DomainError("profile: r must be positive");
    const double pre = prefactor(k, r);
    if (pre == 0.0) return -kInf;
    return std::log(std::abs(pre)) + std::log(amp_) + log_core(r);
}

std::vector<double> RadialProfile::nodes_in(int k, double lo, double hi) const {
    if (!(lo < hi)) throw DomainError("nodes_in: need lo < hi");
    // Sign of g_k equals the sign of the prefactor for the exponential
    // family; for periodic profiles sample g_k itself.
    const auto sig = [&](double r) {
        const double v = periodic() ? deriv(k, r) : prefactor(k, r);
        return (v > 0.0) - (v < 0.0);
    };
    constexpr int kScan = 1024;
    std::vector<double> nodes;
    double prev_r = lo;
    int prev_s = sig(lo);
    for (int i = 1; i <= kScan; ++i) {
        const double r = lo + (hi - lo) * i / kScan;
        const int s = sig(r);
        if (s != prev_s) {
            double a = prev_r, bnd = r;
            int sa = prev_s;
            if (sa == 0) {
                nodes.push_back(a);
            } else {
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (a + bnd);
                    const int sm = sig(mid);
                    if (sm == 0) { a = bnd = mid; break; }
                    if (sm == sa) a = mid; else bnd = mid;
                }
                nodes.push_back(0.5 * (a + bnd));
            }
        }
        prev_r = r;
        prev_s = s;
    }
    return nodes;
}

double RadialProfile::suggested_r_max() const {
    switch (decay_.cls) {
        case DecayClass::Exponential: return 40.0 / decay_.rate;
        case DecayClass::Gaussian: return std::sqrt(120.0 / decay_.rate);
        case DecayClass::PolyExponential:
            return (40.0 + 6.0 * std::max(0.0, decay_.prefactor_degree)) / decay_.rate;
        case DecayClass::PeriodicCosine: return decay_.period;
    }
    throw DomainError("suggested_r_max: unknown decay class");
}

RadialProfile RadialProfile::rescaled(double c) const {
    if (!(c > 0.0)) throw DomainError("rescaled: scale must be positive");
    RadialProfile p = *this;
    p.amp_ *= c;
    p.decay_.rho0 *= c;
    p.norm_ *= c;
    p.single_orbital_ = single_orbital_ && p.norm_ == 1.0;
    p.id_ = id_ + "*" + fmt_param(c);
    return p;
}

// --- catalog ---------------------------------------------------------------

RadialProfile RadialProfile::exponential(double b, int dim) {
    if (!(b > 0.0)) throw DomainError("exponential profile: decay rate b must be positive");
    if (dim < 1) throw DomainError("exponential profile: dimension must be positive");
    RadialProfile p;
    p.dim_ = dim;
    p.decay_ = {DecayClass::Exponential, b, 0.0, 0.0, 0.0, 0.0};
    p.amp_ = std::pow(b, dim) / (sphere_surface(dim) * std::tgamma(dim));
    p.norm_ = 1.0;
    p.single_orbital_ = true;
    p.id_ = "exp:b=" + fmt_param(b) + ",D=" + std::to_string(dim);
    p.build_chain();
    return p;
}

RadialProfile RadialProfile::hydrogenic() {
    RadialProfile p = exponential(2.0, 3);
    p.amp_ = 1.0 / kPi;  // exact closed form of b^3/(4 pi * 2!) at b = 2
    p.id_ = "hydrogenic";
    return p;
}

RadialProfile RadialProfile::gaussian(double alpha, int dim) {
    if (!(alpha > 0.0)) throw DomainError("gaussian profile: alpha must be positive");
    if (dim < 1) throw DomainError("gaussian profile: dimension must be positive");
    RadialProfile p;
    p.dim_ = dim;
    p.decay_ = {DecayClass::Gaussian, alpha, 0.0, 0.0, 0.0, 0.0};
    p.amp_ = std::pow(alpha / kPi, dim / 2.0);
    p.norm_ = 1.0;
    p.single_orbital_ = true;
    p.id_ = "gauss:a=" + fmt_param(alpha) + ",D=" + std::to_string(dim);
    p.build_chain();
    return p;
}

RadialProfile RadialProfile::poly_exponential(double beta, double b) {
    if (!(b > 0.0)) throw DomainError("poly-exponential profile: b must be positive");
    if (!(beta > -3.0))
        throw DomainError("poly-exponential profile: beta must exceed -3 for a finite norm");
    RadialProfile p;
    p.dim_ = 3;
    p.decay_ = {DecayClass::PolyExponential, b, beta, 0.0, 0.0, 0.0};
    p.amp_ = std::pow(b, beta + 3.0) / (sphere_surface(3) * std::tgamma(beta + 3.0));
    p.norm_ = 1.0;
    p.single_orbital_ = false;
    p.id_ = "polyexp:beta=" + fmt_param(beta) + ",b=" + fmt_param(b);
    p.build_chain();
    return p;
}

RadialProfile RadialProfile::ho1d_ground() {
    RadialProfile p = gaussian(1.0, 1);
    p.id_ = "ho1d";
    return p;
}

RadialProfile RadialProfile::periodic_cosine(double rho0, double modulation, double period) {
    if (!(rho0 > 0.0)) throw DomainError("periodic profile: rho0 must be positive");
    if (!(modulation >= 0.0 && modulation < 1.0))
        throw DomainError("periodic profile: modulation A must lie in [0, 1) so rho stays positive");
    if (!(period > 0.0)) throw DomainError("periodic profile: period L must be positive");
    RadialProfile p;
    p.dim_ = 1;
    p.decay_ = {DecayClass::PeriodicCosine, 0.0, 0.0, rho0, modulation, period};
    p.norm_ = rho0 * period;  // one cell
    p.single_orbital_ = false;
    p.id_ = "cos:rho0=" + fmt_param(rho0) + ",A=" + fmt_param(modulation) +
            ",L=" + fmt_param(period);
    return p;
}

RadialProfile make_hydrogenic() { return RadialProfile::hydrogenic(); }
RadialProfile make_exponential(double b, int dim) { return RadialProfile::exponential(b, dim); }
RadialProfile make_gaussian(double alpha, int dim) { return RadialProfile::gaussian(alpha, dim); }
RadialProfile make_poly_exponential(double beta, double b) {
    return RadialProfile::poly_exponential(beta, b);
}
RadialProfile make_ho1d_ground() { return RadialProfile::ho1d_ground(); }
RadialProfile make_periodic_cosine(double rho0, double modulation, double period) {
    return RadialProfile::periodic_cosine(rho0, modulation, period);
}

// --- profile id grammar ------------------------------------------------------

namespace {

// Splits "key1=v1,key2=v2,..." and returns the values for the expected keys.
std::vector<double> parse_kv(const std::string& id, const std::string& body,
                             const std::vector<std::string>& keys) {
    std::vector<double> values;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const std::string want = keys[i] + "=";
        if (body.compare(pos, want.size(), want) != 0)
            throw DomainError("profile id \"" + id + "\": expected " + want + " at position " +
                              std::to_string(pos));
        pos += want.size();
        const std::size_t comma = body.find(',', pos);
        const std::string piece =
            body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        char* end = nullptr;
        const double v = std::strtod(piece.c_str(), &end);
        if (end != piece.c_str() + piece.size() || piece.empty())
            throw DomainError("profile id \"" + id + "\": bad number \"" + piece + "\"");
        values.push_back(v);
        pos = comma == std::string::npos ? body.size() : comma + 1;
        if (i + 1 < keys.size() && comma == std::string::npos)
            throw DomainError("profile id \"" + id + "\": missing " + keys[i + 1] + "=");
    }
    if (pos != body.size())
        throw DomainError("profile id \"" + id + "\": trailing junk");
    return values;
}

} // namespace

RadialProfile parse_profile_id(const std::string& id) {
    if (id == "hydrogenic") return make_hydrogenic();
    if (id == "ho1d") return make_ho1d_ground();
    const std::size_t colon = id.find(':');
    const std::string head = id.substr(0, colon);
    const std::string body = colon == std::string::npos ? "" : id.substr(colon + 1);
    if (head == "exp") {
        const auto v = parse_kv(id, body, {"b", "D"});
        const double d = v[1];
        if (d < 1 || d != std::floor(d))
            throw DomainError("profile id \"" + id + "\": D must be a positive integer");
        return make_exponential(v[0], static_cast<int>(d));
    }
    if (head == "gauss") {
        const auto v = parse_kv(id, body, {"a", "D"});
        const double d = v[1];
        if (d < 1 || d != std::floor(d))
            throw DomainError("profile id \"" + id + "\": D must be a positive integer");
        return make_gaussian(v[0], static_cast<int>(d));
    }
    if (head == "polyexp") {
        const auto v = parse_kv(id, body, {"beta", "b"});
        return make_poly_exponential(v[0], v[1]);
    }
    if (head == "cos") {
        const auto v = parse_kv(id, body, {"rho0", "A", "L"});
        return make_periodic_cosine(v[0], v[1], v[2]);
    }
    throw DomainError("unknown profile id \"" + id +
                      "\" (grammar: hydrogenic | ho1d | exp:b=<v>,D=<d> | gauss:a=<v>,D=<d>"
                      " | polyexp:beta=<v>,b=<v> | cos:rho0=<v>,A=<v>,L=<v>)");
}

// --- derived pointwise quantities -----------------------------------------

namespace {

std::map<std::pair<int, int>, double>& uk_constant_table() {
    static std::map<std::pair<int, int>, double> table;
    return table;
}

} // namespace

double normalized_derivative_constant(int dim, int k) {
    const auto& table = uk_constant_table();
    const auto it = table.find({dim, k});
    return it == table.end() ? 1.0 : it->second;
}

void set_normalized_derivative_constant(int dim, int k, double value) {
    uk_constant_table()[{dim, k}] = value;
}

double normalized_derivative(const RadialProfile& profile, int k, double r) {
    if (k < 1 || k > RadialProfile::kMaxDerivOrder)
        throw DomainError("normalized derivative: order starts at 1 (the density itself is not "
                          "a normalized derivative) and ends at 6");
    const double rho = profile.value(r);
    if (!(rho > 0.0)) throw PoleError("normalized derivative: rho = 0", r);
    const double expo = static_cast<double>(profile.dim() + k) / profile.dim();
    return normalized_derivative_constant(profile.dim(), k) *
           std::abs(profile.deriv(k, r)) / std::pow(rho, expo);
}

SlopePrediction predicted_log_slope(const KedTerm& term, const DecayInfo& decay) {
    switch (decay.cls) {
        case DecayClass::Exponential:
        case DecayClass::PolyExponential:
            return {term.decay_index(), decay.rate, Abscissa::R};
        case DecayClass::Gaussian:
            return {term.decay_index(), decay.rate, Abscissa::RSquared};
        case DecayClass::PeriodicCosine: break;
    }
    throw DomainError("predicted_log_slope: periodic densities have no asymptotic decay slope");
}

double log_term_eval(const KedTerm& term, const RadialProfile& profile, double r,
                     const EvalOptions& opts) {
    if (term.dim() != profile.dim())
        throw DimensionMismatch("log_term_eval: term is D=" + std::to_string(term.dim()) +
                                " but profile \"" + profile.id() + "\" is D=" +
                                std::to_string(profile.dim()));
    double log_rho;
    if (profile.periodic()) {
        const double rho = profile.value(r);
        if (!(rho > 0.0)) throw PoleError("log_term_eval: rho = 0", r);
        log_rho = std::log(rho);
    } else {
        log_rho = profile.log_value(r);
    }
    if (log_rho < opts.ln_floor)
        throw UnderflowGuard("log_term_eval: ln rho = " + fmt_g(log_rho) +
                                 " fell below the floor " + fmt_g(opts.ln_floor),
                             log_rho);

    double acc = term.density_power().to_double() * log_rho;
    const auto& n = term.exponents().entries();
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] == 0) continue;
        const double lg = profile.log_abs_deriv(static_cast<int>(k) + 1, r);
        if (lg == -kInf)
            throw NodeError("log_term_eval: derivative of order " + std::to_string(k + 1) +
                                " has a node at r = " + fmt_g(r),
                            r);
        acc += n[k] * lg;
    }
    return acc;
}

double term_value(const KedTerm& term, const RadialProfile& profile, double r) {
    if (term.dim() != profile.dim())
        throw DimensionMismatch("term_value: term is D=" + std::to_string(term.dim()) +
                                " but profile \"" + profile.id() + "\" is D=" +
                                std::to_string(profile.dim()));
    const double rho = profile.value(r);
    if (!(rho > 0.0)) throw PoleError("term_value: rho = 0", r);

    double log_acc = term.density_power().to_double() * std::log(rho);
    const auto& n = term.exponents().entries();
    for (std::size_t k = 0; k < n.size(); ++k) {
        if (n[k] == 0) continue;
        const double lg = profile.log_abs_deriv(static_cast<int>(k) + 1, r);
        if (lg == -kInf) return 0.0;  // a node annihilates the monomial
        log_acc += n[k] * lg;
    }
    return term.coefficient() * std::exp(log_acc);
}

} // namespace kedlab
