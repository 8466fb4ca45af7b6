// Acceptance suite: every release-gating check in one binary, one verdict
// line per criterion.  Exits non-zero if anything fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kedlab/cli.hpp"
#include "kedlab/fit.hpp"
#include "kedlab/grid.hpp"
#include "kedlab/probe.hpp"
#include "kedlab/profiles.hpp"
#include "kedlab/reference.hpp"
#include "kedlab/term.hpp"
#include "kedlab/util.hpp"
#include "oracles.hpp"

using namespace kedlab;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, label.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

// 1. validate --dim D reports m = D+1 with zero theory failures, in < 10 s.
void criterion_bound_reproduction() {
    bool ok = true;
    std::ostringstream detail;
    for (int dim : {1, 2, 3}) {
        const auto start = std::chrono::steady_clock::now();
        std::ostringstream out, err;
        const int code = cli::run({"validate", "--dim", std::to_string(dim), "--format", "json"},
                                  out, err);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        int m_measured = -1;
        long long n_failures = -1;
        try {
            const auto j = nlohmann::json::parse(out.str());
            m_measured = j["summary"]["m_measured"].get<int>();
            n_failures = j["summary"]["n_failures"].get<long long>();
        } catch (...) {
        }
        const bool this_ok =
            code == 0 && m_measured == dim + 1 && n_failures == 0 && seconds < 10.0;
        ok = ok && this_ok;
        detail << "D=" << dim << ": m=" << m_measured << " failures=" << n_failures << " exit="
               << code << " t=" << std::fixed << seconds << "s; ";
    }
    report(1, "validate reports m = 2, 3, 4 for D = 1, 2, 3", ok, detail.str());
}

// 2. every D=3 term with total order >= 6 grows on the hydrogenic density,
//    with the slope within 2% of the prediction.
void criterion_sixth_order_divergence() {
    const auto hyd = make_hydrogenic();
    bool ok = true;
    int checked = 0;
    double worst = 0.0;
    for (const auto& term : enumerate_terms(3, BoundaryMode::Localized, 6)) {
        if (term.exponents().total_order() < 6) continue;
        ++checked;
        const auto r = probe_term(term, hyd);
        const double rel =
            std::abs(r.measured_slope - r.predicted_slope) / std::abs(r.predicted_slope);
        worst = std::max(worst, rel);
        if (r.verdict != Verdict::Growing || rel > 0.02) ok = false;
    }
    std::ostringstream detail;
    detail << checked << " terms, worst slope deviation " << worst * 100.0 << "%";
    report(2, "sixth-order and higher terms diverge on the hydrogenic density", ok && checked == 11,
           detail.str());
}

// 3. D=1 marginal terms are bounded per cell on the periodic profile but
//    never decay on localized ones.
void criterion_periodic_relaxation() {
    const auto cell = make_periodic_cosine(1.0, 0.5, 1.0);
    const auto line = make_exponential(2.0, 1);
    const auto ho = make_ho1d_ground();
    bool ok = true;
    int checked = 0;
    for (const auto& term : enumerate_terms(1, BoundaryMode::Periodic)) {
        if (term.exponents().total_order() != 3) continue;
        ++checked;
        if (!probe_periodic(term, cell, 4).bounded) ok = false;
        for (const auto& p : {line, ho}) {
            const auto v = probe_term(term, p).verdict;
            if (v == Verdict::Decaying) ok = false;
        }
    }
    report(3, "marginal terms survive periodically, not on localized densities",
           ok && checked == 3, std::to_string(checked) + " marginal terms");
}

// 4. all 12 admissible D=3 terms match the predicted slope on e^{-2r}/pi
//    over r in [10, 30] to 2% relative (1e-6 when the whole chain has a
//    constant prefactor, i.e. gradient-only terms).
void criterion_slope_accuracy() {
    const auto hyd = make_hydrogenic();
    bool ok = true;
    double worst = 0.0, worst_exact = 0.0;
    int checked = 0;
    for (const auto& term : enumerate_terms(3, BoundaryMode::Localized)) {
        ++checked;
        const auto r = probe_term(term, hyd, ProbeWindow(10.0, 30.0, 64, Abscissa::R));
        const double rel =
            std::abs(r.measured_slope - r.predicted_slope) / std::abs(r.predicted_slope);
        worst = std::max(worst, rel);
        if (rel > 0.02) ok = false;
        if (term.exponents().max_order() <= 1) {
            worst_exact = std::max(worst_exact, rel);
            if (rel > 1e-6) ok = false;
        }
    }
    std::ostringstream detail;
    detail << checked << " terms, worst " << worst * 100.0 << "%, gradient-only worst "
           << worst_exact;
    report(4, "admissible D=3 slopes match -q*b on the hydrogenic density", ok && checked == 12,
           detail.str());
}

// 5. exactly solvable energies through quadrature.
void criterion_exact_energies() {
    const auto hyd = make_hydrogenic();
    const auto ho = make_ho1d_ground();
    const double t_h =
        integrate(reference_evaluator(ReferenceKind::VonWeizsacker, hyd), default_grid(hyd));
    const double t_ho =
        integrate(reference_evaluator(ReferenceKind::VonWeizsacker, ho), default_grid(ho));
    const double lap_h =
        integrate([&](double r) { return hyd.deriv(2, r); }, default_grid(hyd));
    const double lap_ho =
        integrate([&](double r) { return ho.deriv(2, r); }, default_grid(ho));
    const bool ok = std::abs(t_h - 0.5) <= 1e-6 && std::abs(t_ho - 0.25) <= 1e-8 &&
                    std::abs(lap_h) <= 1e-8 && std::abs(lap_ho) <= 1e-8;
    std::ostringstream detail;
    detail << "T_H=" << t_h << " T_HO=" << t_ho << " int(lap rho)=" << lap_h << ", " << lap_ho;
    report(5, "hydrogen 0.5 Ha, oscillator 0.25 Ha, vanishing laplacian integral", ok,
           detail.str());
}

// 6. fitting the positive single-orbital KED of hydrogen on the standard
//    basis returns (0, 1, 0).
void criterion_fit_recovery() {
    const auto hyd = make_hydrogenic();
    const auto result =
        fit_expansion(reference_evaluator(ReferenceKind::SingleOrbitalPositive, hyd),
                      standard_basis(3), hyd, default_grid(hyd));
    const bool ok = result.coefficients.size() == 3 &&
                    std::abs(result.coefficients[0]) <= 1e-6 &&
                    std::abs(result.coefficients[1] - 1.0) <= 1e-6 &&
                    std::abs(result.coefficients[2]) <= 1e-6 && result.residual_rms <= 1e-10;
    std::ostringstream detail;
    detail << "a=(" << result.coefficients[0] << ", " << result.coefficients[1] << ", "
           << result.coefficients[2] << "), rms=" << result.residual_rms;
    report(6, "fit recovers (0, 1, 0) with negligible residual", ok, detail.str());
}

// 7. enumeration counts equal partition sums; the derivative-order bound
//    holds across dimensions.
void criterion_combinatorics() {
    bool ok = true;
    std::ostringstream detail;
    const int expected_counts[] = {4, 7, 12};
    for (int dim : {1, 2, 3}) {
        long long oracle = 0;
        for (int s = 0; s <= dim + 1; ++s) oracle += oracles::partition_count(s);
        const auto n = enumerate_terms(dim, BoundaryMode::Localized).size();
        if (oracle != expected_counts[dim - 1] || n != static_cast<std::size_t>(oracle)) ok = false;
        detail << "D=" << dim << ":" << n << " ";
    }
    for (int dim = 1; dim <= 10; ++dim)
        if (max_derivative_order(dim, BoundaryMode::Localized) != dim + 1) ok = false;
    report(7, "enumeration counts 4/7/12 match the partition oracle; m(D) = D+1 up to D=10", ok,
           detail.str());
}

// 8. uniform-gas constants against the Fermi-sphere quadrature oracle.
void criterion_tf_constants() {
    bool ok = true;
    double worst = 0.0;
    for (int dim : {1, 2, 3}) {
        for (double k_fermi : {0.8, 1.0, 1.7}) {
            const double rel =
                std::abs(oracles::fermi_sphere_constant(dim, k_fermi) / tf_constant(dim) - 1.0);
            worst = std::max(worst, rel);
            if (rel > 1e-10) ok = false;
        }
    }
    report(8, "c_TF matches the Fermi-sphere integral to 1e-10", ok,
           "worst relative deviation " + fmt_g(worst, 3));
}

} // namespace

int main() {
    criterion_bound_reproduction();
    criterion_sixth_order_divergence();
    criterion_periodic_relaxation();
    criterion_slope_accuracy();
    criterion_exact_energies();
    criterion_fit_recovery();
    criterion_combinatorics();
    criterion_tf_constants();

    if (failures == 0) {
        std::printf("RESULT: all 8 acceptance criteria passed\n");
        return 0;
    }
    std::printf("RESULT: %d acceptance criteria FAILED\n", failures);
    return 1;
}
