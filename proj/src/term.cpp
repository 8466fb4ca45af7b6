#include "kedlab/term.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "kedlab/errors.hpp"

namespace kedlab {

std::string admissibility_name(Admissibility a) {
    switch (a) {
        case Admissibility::LocalizedAdmissible: return "LocalizedAdmissible";
        case Admissibility::PeriodicMarginal: return "PeriodicMarginal";
        case Admissibility::Inadmissible: return "Inadmissible";
    }
    throw DomainError("unknown admissibility value");
}

// --- ExponentVector ------------------------------------------------------

ExponentVector::ExponentVector(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int n : entries_)
        if (n < 0) throw DomainError("exponent vector: entries must be non-negative");
    if (!entries_.empty() && entries_.back() == 0) {
        std::vector<int> trimmed = entries_;
        while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
        std::string hint;
        for (std::size_t i = 0; i < trimmed.size(); ++i)
            hint += (i ? "," : "") + std::to_string(trimmed[i]);
        throw DomainError("exponent vector: trailing zeros are not canonical; pass \"" +
                          hint + "\" instead");
    }
}

long long ExponentVector::total_order() const {
    long long s = 0;
    for (std::size_t k = 0; k < entries_.size(); ++k)
        s += static_cast<long long>(k + 1) * entries_[k];
    return s;
}

long long ExponentVector::exponent_sum() const {
    long long s = 0;
    for (int n : entries_) s += n;
    return s;
}

std::string ExponentVector::str() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        out += (i ? "," : "") + std::to_string(entries_[i]);
    return out;
}

ExponentVector ExponentVector::parse(const std::string& text) {
    std::vector<int> entries;
    if (!text.empty()) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t comma = text.find(',', pos);
            const std::string piece =
                text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            int v = 0;
            const auto [p, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
            if (ec != std::errc{} || p != piece.data() + piece.size())
                throw DomainError("exponent vector: cannot parse entry \"" + piece +
                                  "\" (grammar: n1,n2,...,nm with non-negative integers, last >= 1)");
            entries.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return ExponentVector(std::move(entries));
}

bool operator<(const ExponentVector& a, const ExponentVector& b) {
    const long long ta = a.total_order(), tb = b.total_order();
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(),
                                        b.entries_.begin(), b.entries_.end());
}

// --- KedTerm -------------------------------------------------------------

KedTerm make_term(int dim, ExponentVector exponents) {
    if (dim < 1) throw DomainError("term: dimension must be a positive integer");
    KedTerm t;
    t.dim_ = dim;
    t.exponents_ = std::move(exponents);

    long long weighted = 0;  // sum_k (D+k) n_k
    const auto& n = t.exponents_.entries();
    for (std::size_t k = 0; k < n.size(); ++k)
        weighted += static_cast<long long>(dim + static_cast<int>(k) + 1) * n[k];

    t.ell_ = dim + 2 - weighted;
    t.density_power_ = Rational(t.ell_, dim);
    t.decay_index_ = Rational(dim + 2 - t.exponents_.total_order(), dim);
    return t;
}

KedTerm make_term(int dim, std::vector<int> exponents) {
    return make_term(dim, ExponentVector(std::move(exponents)));
}

KedTerm KedTerm::with_coefficient(double c) const {
    KedTerm t = *this;
    t.coefficient_ = c;
    return t;
}

// --- classification ------------------------------------------------------

Classification classify(const KedTerm& term, BoundaryMode boundary) {
    const long long total = term.exponents().total_order();
    const long long limit = term.dim() + 2;
    Admissibility cls;
    if (total < limit)
        cls = Admissibility::LocalizedAdmissible;
    else if (total == limit)
        cls = Admissibility::PeriodicMarginal;
    else
        cls = Admissibility::Inadmissible;

    const bool finite = boundary == BoundaryMode::Localized ? total < limit : total <= limit;
    return {cls, finite};
}

// --- enumeration ---------------------------------------------------------

namespace {

// All multiplicity vectors (n_1..n_m) with sum k*n_k == s, canonical form.
void partitions_of(int s, std::vector<ExponentVector>& out) {
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            if (parts.empty()) {
                out.emplace_back();
            } else {
                std::vector<int> mult(static_cast<std::size_t>(parts.front()), 0);
                for (int p : parts) ++mult[static_cast<std::size_t>(p - 1)];
                out.emplace_back(std::move(mult));
            }
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - p, p);
            parts.pop_back();
        }
    };
    rec(rec, s, s);
}

} // namespace

std::vector<KedTerm> enumerate_terms(int dim, BoundaryMode boundary,
                                     std::optional<int> max_total_order) {
    if (dim < 1) throw DomainError("enumerate: dimension must be a positive integer");
    const int bound = max_total_order.value_or(
        boundary == BoundaryMode::Localized ? dim + 1 : dim + 2);
    if (bound > 64)
        throw LimitError("enumerate: max_total_order " + std::to_string(bound) +
                         " exceeds the combinatorial guard (64)");

    std::vector<ExponentVector> vectors;
    for (int s = 0; s <= bound; ++s) partitions_of(s, vectors);
    std::sort(vectors.begin(), vectors.end());

    std::vector<KedTerm> terms;
    terms.reserve(vectors.size());
    for (auto& v : vectors) terms.push_back(make_term(dim, std::move(v)));
    return terms;
}

int max_derivative_order(int dim, BoundaryMode boundary) {
    if (dim < 1) throw DomainError("max_derivative_order: dimension must be positive");
    return boundary == BoundaryMode::Localized ? dim + 1 : dim + 2;
}

// --- serialization -------------------------------------------------------

std::string term_token(const KedTerm& term) {
    std::ostringstream os;
    os << "D=" << term.dim() << ";n=" << term.exponents().str() << ";l=" << term.ell()
       << ";q=" << term.decay_index();
    return os.str();
}

namespace {

std::string expect_field(const std::string& text, std::size_t& pos, const std::string& key) {
    if (text.compare(pos, key.size(), key) != 0)
        throw DomainError("term token: expected \"" + key + "\" in \"" + text +
                          "\" (grammar: D=<d>;n=<n1,n2,...>;l=<ell>;q=<p>/<q>)");
    pos += key.size();
    const std::size_t semi = text.find(';', pos);
    const std::string value =
        text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
    pos = semi == std::string::npos ? text.size() : semi + 1;
    return value;
}

long long parse_ll(const std::string& s, const std::string& what) {
    long long v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw DomainError("term token: bad " + what + " \"" + s + "\"");
    return v;
}

} // namespace

KedTerm parse_term_token(const std::string& token) {
    std::size_t pos = 0;
    const std::string d = expect_field(token, pos, "D=");
    const std::string n = expect_field(token, pos, "n=");
    const std::string l = expect_field(token, pos, "l=");
    const std::string q = expect_field(token, pos, "q=");
    if (pos != token.size()) throw DomainError("term token: trailing junk in \"" + token + "\"");

    const long long dim = parse_ll(d, "dimension");
    if (dim < 1 || dim > 1024) throw DomainError("term token: dimension out of range");
    KedTerm term = make_term(static_cast<int>(dim), ExponentVector::parse(n));

    const std::size_t slash = q.find('/');
    if (slash == std::string::npos) throw DomainError("term token: decay index must be <p>/<q>");
    const Rational q_parsed(parse_ll(q.substr(0, slash), "decay numerator"),
                            parse_ll(q.substr(slash + 1), "decay denominator"));
    if (parse_ll(l, "ell") != term.ell() || q_parsed != term.decay_index())
        throw DomainError("term token: stored l/q disagree with the dimensional identity for \"" +
                          token + "\"");
    return term;
}

std::string term_csv_header() { return "dim,exponents,total_order,ell,q_num,q_den,class"; }

std::string term_csv_row(const KedTerm& term) {
    std::ostringstream os;
    os << term.dim() << ",\"" << term.exponents().str() << "\"," << term.exponents().total_order()
       << ',' << term.ell() << ',' << term.decay_index().num() << ',' << term.decay_index().den()
       << ',' << admissibility_name(classify(term, BoundaryMode::Localized).admissibility);
    return os.str();
}

KedTerm parse_term_csv_row(const std::string& row) {
    // dim,"n1,n2",total,ell,q_num,q_den,class
    const std::size_t c1 = row.find(',');
    const std::size_t quote_open = row.find('"', c1);
    const std::size_t quote_close = quote_open == std::string::npos
                                        ? std::string::npos
                                        : row.find('"', quote_open + 1);
    if (c1 == std::string::npos || quote_open != c1 + 1 || quote_close == std::string::npos)
        throw DomainError("term csv: malformed row \"" + row + "\"");

    const long long dim = parse_ll(row.substr(0, c1), "dimension");
    KedTerm term = make_term(static_cast<int>(dim),
                             ExponentVector::parse(row.substr(quote_open + 1,
                                                              quote_close - quote_open - 1)));

    std::vector<std::string> rest;
    std::size_t pos = quote_close + 2;  // skip closing quote and comma
    while (pos <= row.size()) {
        const std::size_t comma = row.find(',', pos);
        rest.push_back(row.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (rest.size() != 5) throw DomainError("term csv: expected 7 fields in \"" + row + "\"");
    const bool consistent =
        parse_ll(rest[0], "total_order") == term.exponents().total_order() &&
        parse_ll(rest[1], "ell") == term.ell() &&
        Rational(parse_ll(rest[2], "q_num"), parse_ll(rest[3], "q_den")) == term.decay_index() &&
        rest[4] == admissibility_name(classify(term, BoundaryMode::Localized).admissibility);
    if (!consistent)
        throw DomainError("term csv: derived fields disagree with (dim, exponents) in \"" + row + "\"");
    return term;
}

} // namespace kedlab
