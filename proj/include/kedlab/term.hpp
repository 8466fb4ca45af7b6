#ifndef KEDLAB_TERM_HPP
#define KEDLAB_TERM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kedlab/rational.hpp"

namespace kedlab {

/// Boundary condition under which a term's asymptotic finitude is judged.
enum class BoundaryMode { Localized, Periodic };

/// Trichotomy on the weighted derivative count S = sum_k k*n_k:
///   S < D+2  -> finite for localized densities,
///   S = D+2  -> finite only for periodic densities,
///   S > D+2  -> divergent in both settings.
enum class Admissibility { LocalizedAdmissible, PeriodicMarginal, Inadmissible };

std::string admissibility_name(Admissibility a);

/// Derivative exponents (n_1, ..., n_m) of a monomial term.  Canonical
/// form: entries non-negative, no trailing zeros (so n_m >= 1 whenever the
/// vector is non-empty, and the pure-density term is the empty vector).
class ExponentVector {
public:
    ExponentVector() = default;
    explicit ExponentVector(std::vector<int> entries);

    const std::vector<int>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Largest derivative order present (m); 0 for the pure-density term.
    int max_order() const { return static_cast<int>(entries_.size()); }

    /// Weighted derivative count sum_k k*n_k.
    long long total_order() const;

    /// Plain exponent sum sum_k n_k.
    long long exponent_sum() const;

    /// "n1,n2,...,nm"; empty string for the pure-density term.
    std::string str() const;
    static ExponentVector parse(const std::string& text);

    friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
        return a.entries_ == b.entries_;
    }
    friend bool operator!=(const ExponentVector& a, const ExponentVector& b) {
        return !(a == b);
    }
    /// Orders by (total_order, lexicographic entries); the enumeration
    /// contract sorts with exactly this key.
    friend bool operator<(const ExponentVector& a, const ExponentVector& b);

private:
    std::vector<int> entries_;
};

/// One monomial rho^{ell/D} prod_k |grad^k rho|^{n_k}.  The density
/// exponent and the decay index are derived from (dim, exponents) by
/// dimensional closure and are kept exact; they are never set directly.
class KedTerm {
public:
    int dim() const { return dim_; }
    const ExponentVector& exponents() const { return exponents_; }
    long long ell() const { return ell_; }
    Rational density_power() const { return density_power_; }
    Rational decay_index() const { return decay_index_; }
    double coefficient() const { return coefficient_; }

    /// Same term with a different multiplicative coefficient (used by the
    /// fitting side; admissibility and decay are coefficient-independent).
    KedTerm with_coefficient(double c) const;

    friend KedTerm make_term(int dim, ExponentVector exponents);

private:
    KedTerm() = default;

    int dim_ = 1;
    ExponentVector exponents_;
    long long ell_ = 0;
    Rational density_power_;
    Rational decay_index_;
    double coefficient_ = 1.0;
};

/// Builds a term for a D-dimensional density.  ell is fixed by requiring
/// the monomial to carry the energy-density length dimension L^{-D-2}:
///   ell = D + 2 - sum_k (D+k) n_k,
/// and the decay index is q = (D + 2 - sum_k k*n_k) / D.
KedTerm make_term(int dim, ExponentVector exponents);
KedTerm make_term(int dim, std::vector<int> exponents);

struct Classification {
    Admissibility admissibility;
    bool finite;
};

/// Judges asymptotic finitude: strict inequality for localized densities,
/// non-strict for periodic ones.
Classification classify(const KedTerm& term, BoundaryMode boundary);

/// Every canonical exponent vector with total order <= bound, where the
/// bound defaults to D+1 (Localized) or D+2 (Periodic) and may be
/// overridden to study divergent terms.  Sorted by (total_order,
/// lexicographic exponents); includes the pure-density term.
std::vector<KedTerm> enumerate_terms(int dim, BoundaryMode boundary,
                                     std::optional<int> max_total_order = std::nullopt);

/// Highest derivative order appearing in any admissible term: D+1 for
/// localized systems, D+2 for periodic ones.
int max_derivative_order(int dim, BoundaryMode boundary);

/// Independent variable of an asymptotic log-slope fit.
enum class Abscissa { R, RSquared };

/// Predicted asymptotic slope of ln t_j: against r for exponential-class
/// densities (slope -q*b), against r^2 for gaussian-class (slope -q*alpha).
struct SlopePrediction {
    Rational decay_index;
    double rate = 0.0;
    Abscissa abscissa = Abscissa::R;

    double slope() const { return -decay_index.to_double() * rate; }
};

// --- canonical text serialization ---------------------------------------

/// "D=<d>;n=<n1,n2,...>;l=<ell>;q=<p>/<q>"; exact round trip.
std::string term_token(const KedTerm& term);
KedTerm parse_term_token(const std::string& token);

/// CSV row: dim,exponents,total_order,ell,q_num,q_den,class (the exponent
/// field is quoted because it contains commas).  Exact round trip.
std::string term_csv_header();
std::string term_csv_row(const KedTerm& term);
KedTerm parse_term_csv_row(const std::string& row);

} // namespace kedlab

#endif
