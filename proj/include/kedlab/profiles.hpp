#ifndef KEDLAB_PROFILES_HPP
#define KEDLAB_PROFILES_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "kedlab/term.hpp"

namespace kedlab {

enum class DecayClass { Exponential, Gaussian, PolyExponential, PeriodicCosine };

/// Asymptotic decay metadata.  `rate` is b for the exponential family and
/// alpha for gaussians; `prefactor_degree` is the power of r multiplying
/// the exponential (poly-exponential only); the periodic fields describe
/// rho(r) = rho0 * (1 - A cos(2 pi r / L)).
struct DecayInfo {
    DecayClass cls = DecayClass::Exponential;
    double rate = 0.0;
    double prefactor_degree = 0.0;
    double rho0 = 0.0;
    double modulation = 0.0;
    double period = 0.0;
};

/// Sparse polynomial with integer powers of r (negative powers appear in
/// the derivative chains through the (D-1)/r divergence term).
using LaurentPoly = std::vector<std::pair<int, double>>;

/// Analytic radial density with its iterated-derivative chain g_0..g_6.
/// The chain alternates a radial gradient (odd steps, g = g') with a
/// radial divergence (even steps, g = g' + (D-1)/r * g), so |grad^k rho|
/// at radius r is |g_k(r)|.  All closed forms are built at construction;
/// nothing is differentiated numerically.
class RadialProfile {
public:
    static constexpr int kMaxDerivOrder = 6;

    int dim() const { return dim_; }
    double norm() const { return norm_; }
    const DecayInfo& decay() const { return decay_; }
    const std::string& id() const { return id_; }
    bool periodic() const { return decay_.cls == DecayClass::PeriodicCosine; }

    /// phi = sqrt(rho) is usable as a one-electron orbital (N = 1,
    /// node-free, finite gradient energy).
    bool single_orbital() const { return single_orbital_; }

    double value(double r) const;      // rho(r)
    double log_value(double r) const;  // ln rho(r), safe far into the tail

    /// g_k(r) for k in [0, 6]; k = 0 is rho itself.  r must be positive.
    double deriv(int k, double r) const;

    /// ln |g_k(r)|; -inf exactly at a derivative node.
    double log_abs_deriv(int k, double r) const;

    /// Zeros of g_k inside [lo, hi], located by sign-change bracketing.
    std::vector<double> nodes_in(int k, double lo, double hi) const;

    /// Radius beyond which the profile contributes nothing at the default
    /// quadrature accuracy; periodic profiles return one period.
    double suggested_r_max() const;

    /// Same shape scaled to rho -> c*rho (norm scales with it; slopes and
    /// admissibility are unaffected).
    RadialProfile rescaled(double c) const;

    // Catalog constructors.
    static RadialProfile hydrogenic();
    static RadialProfile exponential(double b, int dim);
    static RadialProfile gaussian(double alpha, int dim);
    static RadialProfile poly_exponential(double beta, double b);
    static RadialProfile ho1d_ground();
    static RadialProfile periodic_cosine(double rho0, double modulation, double period);

private:
    RadialProfile() = default;

    void build_chain();
    double prefactor(int k, double r) const;   // g_k(r) / core(r)
    double log_core(double r) const;

    int dim_ = 3;
    double norm_ = 1.0;
    DecayInfo decay_;
    bool single_orbital_ = false;
    std::string id_;

    // exponential family and gaussians: g_k = pre_[k](r) * amp * core(r)
    // with core = r^beta exp(-b r - alpha r^2); periodic profiles use the
    // trig closed form instead and leave pre_ empty.
    double amp_ = 1.0;
    std::array<LaurentPoly, kMaxDerivOrder + 1> pre_{};
};

RadialProfile make_hydrogenic();
RadialProfile make_exponential(double b, int dim);
RadialProfile make_gaussian(double alpha, int dim);
RadialProfile make_poly_exponential(double beta, double b);
RadialProfile make_ho1d_ground();
RadialProfile make_periodic_cosine(double rho0, double modulation, double period);

/// Catalog ids: "hydrogenic", "exp:b=<v>,D=<d>", "gauss:a=<v>,D=<d>",
/// "polyexp:beta=<v>,b=<v>", "ho1d", "cos:rho0=<v>,A=<v>,L=<v>".
RadialProfile parse_profile_id(const std::string& id);

/// u_k(r) = |grad^k rho| / rho^{(D+k)/D}, the dimensionless variable of
/// gradient-corrected enhancement factors; k starts at 1.  The D-dependent
/// normalization constants conventionally attached to u_1 and u_2 are kept
/// at 1 here (they cancel in fits and never affect admissibility); callers
/// may scale by normalized_derivative_constant().
double normalized_derivative(const RadialProfile& profile, int k, double r);

/// Conventional c_k^(D) table entry; identity by default, overridable.
double normalized_derivative_constant(int dim, int k);
void set_normalized_derivative_constant(int dim, int k, double value);

/// Slope of ln t_j predicted from the decay index: -q*b against r for the
/// exponential family, -q*alpha against r^2 for gaussians.  Periodic
/// profiles have no asymptotic slope and are rejected.
SlopePrediction predicted_log_slope(const KedTerm& term, const DecayInfo& decay);

struct EvalOptions {
    /// Guard on ln rho below which evaluation refuses to proceed.
    double ln_floor = -500.0;
};

/// ln t_j(r) = (ell/D) ln rho(r) + sum_k n_k ln|g_k(r)|, evaluated wholly
/// in the log domain (the term's multiplicative coefficient is not
/// included; it is a linear-space concept).  Throws NodeError at a
/// derivative node, PoleError at rho = 0, UnderflowGuard below the floor.
double log_term_eval(const KedTerm& term, const RadialProfile& profile, double r,
                     const EvalOptions& opts = {});

/// coefficient * exp(log shape); exact zero at derivative nodes rather
/// than an error, which is the correct linear-space value.
double term_value(const KedTerm& term, const RadialProfile& profile, double r);

} // namespace kedlab

#endif
