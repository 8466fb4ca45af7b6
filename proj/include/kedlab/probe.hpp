#ifndef KEDLAB_PROBE_HPP
#define KEDLAB_PROBE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "kedlab/profiles.hpp"
#include "kedlab/term.hpp"

namespace kedlab {

/// Sampling window of an asymptotic slope fit.  The abscissa follows the
/// profile's decay class: r for the exponential family, r^2 for gaussians.
struct ProbeWindow {
    ProbeWindow(double lo, double hi, int n, Abscissa x);

    double r_lo;
    double r_hi;
    int samples;
    Abscissa abscissa;
};

/// Window placed far enough out that prefactor drift stays inside the 2%
/// agreement band for every term the bound sweep visits, while ln rho
/// stays comfortably above the evaluation floor:
///   exponential       r in [20, 60] / b
///   poly-exponential  r in [40, 120] / b
///   gaussian          r^2 in [120, 360] / alpha
/// 64 log-spaced samples.
ProbeWindow default_window(const RadialProfile& profile);

enum class Verdict { Decaying, NonDecaying, Growing };

std::string verdict_name(Verdict v);

struct ProbeReport {
    std::string term;          // canonical token
    std::string profile;       // profile id
    double r_lo = 0.0;         // effective window after node/floor trimming
    double r_hi = 0.0;
    int samples = 0;
    Abscissa abscissa = Abscissa::R;
    double measured_slope = 0.0;
    double predicted_slope = 0.0;
    double fit_r2 = 0.0;
    Verdict verdict = Verdict::NonDecaying;
    bool agrees_with_theory = false;
};

/// Least-squares line fit of ln t_j over the window.  The verdict band is
/// eps = tol * decay rate; agreement requires the slope to match the
/// prediction within tol*max(1, |predicted|) and the verdict to match the
/// sign of the decay index.  Nodes of every required g_k are bracketed and
/// the window shrunk past them (keeping it contiguous); fewer than 16
/// clean samples raises WindowError.
ProbeReport probe_term(const KedTerm& term, const RadialProfile& profile,
                       const ProbeWindow& window, double tol = 0.02);
ProbeReport probe_term(const KedTerm& term, const RadialProfile& profile,
                       double tol = 0.02);

struct PeriodicProbe {
    bool bounded = false;
    double max_over_cells = 0.0;
};

/// Evaluates t_j across `cells` periods of a periodic profile; bounded
/// means every sample is finite and the per-cell maxima agree to 1e-10
/// relative (periodicity sanity).
PeriodicProbe probe_periodic(const KedTerm& term, const RadialProfile& profile,
                             int cells);

struct ValidationSummary {
    int dim = 0;
    int m_measured = 0;
    int m_predicted = 0;
    std::size_t n_terms = 0;
    std::size_t n_failures = 0;
    std::vector<ProbeReport> reports;          // term-major, profile-minor
    std::vector<bool> theory_asserted;         // parallel to reports

    bool passed() const { return n_failures == 0 && m_measured == m_predicted; }
};

/// Default profile set for a bound sweep: an exponential-class density
/// (the hydrogenic one for D = 3) plus b = 1 exponential and a unit
/// gaussian, all in the requested dimension.
std::vector<RadialProfile> default_validation_profiles(int dim);

/// Probes every term with total order <= max_total_order (>= D+3 so that
/// divergent witnesses are present) against every profile, in parallel
/// over (term, profile) pairs.  Marginal terms on gaussian-class profiles
/// are reported but not asserted against theory (faster-than-exponential
/// decay makes their finitude a separate question).  m_measured is the
/// highest derivative order among terms found Decaying on every profile.
ValidationSummary validate_bound(int dim, const std::vector<RadialProfile>& profiles,
                                 int max_total_order, double tol = 0.02);

/// {"dim": ..., "m_measured": ..., "m_predicted": ..., "n_terms": ...,
///  "n_failures": ...}
std::string summary_json(const ValidationSummary& summary);

std::string probe_csv_header();
std::string probe_csv_row(const ProbeReport& report);

} // namespace kedlab

#endif
