#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "kedlab/errors.hpp"
#include "kedlab/profiles.hpp"
#include "kedlab/term.hpp"
#include "oracles.hpp"

using namespace kedlab;

TEST_CASE("term construction fixes ell and the decay index") {
    // von Weizsaecker shape: rho^{-1} |grad rho|^2 in three dimensions.
    const KedTerm vw = make_term(3, std::vector<int>{2});
    CHECK(vw.ell() == -3);
    CHECK(vw.density_power() == Rational(-1));
    CHECK(vw.decay_index() == Rational(1));
    CHECK(vw.coefficient() == 1.0);

    const KedTerm g4 = make_term(3, std::vector<int>{0, 0, 0, 1});
    CHECK(g4.ell() == -2);
    CHECK(g4.decay_index() == Rational(1, 3));

    // One-dimensional pure-density term: rho^3.
    const KedTerm tf1 = make_term(1, std::vector<int>{});
    CHECK(tf1.ell() == 3);
    CHECK(tf1.decay_index() == Rational(3));
}

TEST_CASE("term construction rejects bad input") {
    CHECK_THROWS_AS(make_term(0, std::vector<int>{1}), DomainError);
    CHECK_THROWS_AS(make_term(-2, std::vector<int>{}), DomainError);
    CHECK_THROWS_AS(ExponentVector({1, -1}), DomainError);
    CHECK_THROWS_WITH_AS(ExponentVector({2, 0}), doctest::Contains("pass \"2\" instead"),
                         DomainError);
    CHECK_THROWS_WITH_AS(ExponentVector({0, 1, 0, 0}), doctest::Contains("pass \"0,1\" instead"),
                         DomainError);
}

TEST_CASE("classification follows the total-order trichotomy") {
    const KedTerm n4 = make_term(3, std::vector<int>{0, 0, 0, 1});
    const KedTerm n5 = make_term(3, std::vector<int>{0, 0, 0, 0, 1});
    const KedTerm n6 = make_term(3, std::vector<int>{0, 0, 0, 0, 0, 1});

    auto c = classify(n4, BoundaryMode::Localized);
    CHECK(c.admissibility == Admissibility::LocalizedAdmissible);
    CHECK(c.finite);

    c = classify(n5, BoundaryMode::Localized);
    CHECK(c.admissibility == Admissibility::PeriodicMarginal);
    CHECK_FALSE(c.finite);
    c = classify(n5, BoundaryMode::Periodic);
    CHECK(c.finite);

    for (auto mode : {BoundaryMode::Localized, BoundaryMode::Periodic}) {
        c = classify(n6, mode);
        CHECK(c.admissibility == Admissibility::Inadmissible);
        CHECK_FALSE(c.finite);
    }
}

TEST_CASE("classification is monotone in every exponent") {
    const auto rank = [](Admissibility a) {
        return a == Admissibility::LocalizedAdmissible ? 0
                                                       : (a == Admissibility::PeriodicMarginal ? 1 : 2);
    };
    for (int dim : {1, 2, 3}) {
        for (const auto& term : enumerate_terms(dim, BoundaryMode::Localized, dim + 4)) {
            const int base = rank(classify(term, BoundaryMode::Localized).admissibility);
            const auto& n = term.exponents().entries();
            for (std::size_t slot = 0; slot < n.size() + 2; ++slot) {
                std::vector<int> bumped(n);
                if (slot >= bumped.size()) bumped.resize(slot + 1, 0);
                ++bumped[slot];
                const int after =
                    rank(classify(make_term(dim, bumped), BoundaryMode::Localized).admissibility);
                CHECK(after >= base);
            }
        }
    }
}

TEST_CASE("enumeration counts match the partition-sum oracle") {
    CHECK(enumerate_terms(1, BoundaryMode::Localized).size() == 4);
    CHECK(enumerate_terms(2, BoundaryMode::Localized).size() == 7);
    CHECK(enumerate_terms(3, BoundaryMode::Localized).size() == 12);

    for (int dim = 1; dim <= 6; ++dim) {
        for (auto mode : {BoundaryMode::Localized, BoundaryMode::Periodic}) {
            const int bound = mode == BoundaryMode::Localized ? dim + 1 : dim + 2;
            long long expected = 0;
            for (int s = 0; s <= bound; ++s) expected += oracles::partition_count(s);
            CHECK(enumerate_terms(dim, mode).size() == static_cast<std::size_t>(expected));
        }
        long long expected = 0;
        for (int s = 0; s <= dim + 3; ++s) expected += oracles::partition_count(s);
        CHECK(enumerate_terms(dim, BoundaryMode::Localized, dim + 3).size() ==
              static_cast<std::size_t>(expected));
    }
}

TEST_CASE("enumeration is sorted by total order then lexicographic exponents") {
    const auto terms = enumerate_terms(1, BoundaryMode::Localized);
    REQUIRE(terms.size() == 4);
    CHECK(terms[0].exponents().str() == "");
    CHECK(terms[1].exponents().str() == "1");
    CHECK(terms[2].exponents().str() == "0,1");
    CHECK(terms[3].exponents().str() == "2");

    const auto d3 = enumerate_terms(3, BoundaryMode::Localized, 6);
    CHECK(std::is_sorted(d3.begin(), d3.end(), [](const KedTerm& a, const KedTerm& b) {
        return a.exponents() < b.exponents();
    }));
    // No duplicates under the canonical form.
    for (std::size_t i = 1; i < d3.size(); ++i)
        CHECK(d3[i - 1].exponents() != d3[i].exponents());
}

TEST_CASE("enumeration guard refuses runaway total orders") {
    CHECK_THROWS_AS(enumerate_terms(3, BoundaryMode::Localized, 65), LimitError);
    CHECK_NOTHROW(enumerate_terms(1, BoundaryMode::Localized, 12));
}

TEST_CASE("highest derivative order is D+1 localized, D+2 periodic") {
    for (int dim = 1; dim <= 10; ++dim) {
        CHECK(max_derivative_order(dim, BoundaryMode::Localized) == dim + 1);
        CHECK(max_derivative_order(dim, BoundaryMode::Periodic) == dim + 2);
    }
    // The bound must be realized by the enumeration itself.
    for (int dim = 1; dim <= 6; ++dim) {
        for (auto mode : {BoundaryMode::Localized, BoundaryMode::Periodic}) {
            int seen = 0;
            for (const auto& t : enumerate_terms(dim, mode))
                seen = std::max(seen, t.exponents().max_order());
            CHECK(seen == max_derivative_order(dim, mode));
        }
    }
}

TEST_CASE("the two decay-index routes agree exactly") {
    for (int dim = 1; dim <= 6; ++dim) {
        for (const auto& term : enumerate_terms(dim, BoundaryMode::Periodic, dim + 4)) {
            // route 1 is stored; route 2 is ell/D + sum n_k
            const Rational route2 =
                Rational(term.ell(), dim) + Rational(term.exponents().exponent_sum());
            CHECK(term.decay_index() == route2);

            // dimensional closure: rho^{ell/D} prod (grad^k rho)^{n_k} has
            // length dimension L^{-D-2}
            Rational closure = term.density_power();
            const auto& n = term.exponents().entries();
            for (std::size_t k = 0; k < n.size(); ++k)
                closure = closure + Rational(n[k]) * Rational(dim + static_cast<int>(k) + 1, dim);
            CHECK(closure == Rational(dim + 2, dim));
        }
    }
}

TEST_CASE("predicted log-slope scales the decay index by the rate") {
    const KedTerm vw = make_term(3, std::vector<int>{2});
    const auto hyd = make_hydrogenic();
    const auto pred = predicted_log_slope(vw, hyd.decay());
    CHECK(pred.abscissa == Abscissa::R);
    CHECK(pred.slope() == doctest::Approx(-2.0).epsilon(1e-15));

    const KedTerm n5 = make_term(3, std::vector<int>{0, 0, 0, 0, 1});
    CHECK(predicted_log_slope(n5, hyd.decay()).slope() == 0.0);

    const KedTerm n6 = make_term(3, std::vector<int>{0, 0, 0, 0, 0, 1});
    CHECK(predicted_log_slope(n6, hyd.decay()).slope() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    const auto gauss = make_gaussian(0.7, 3);
    const auto gpred = predicted_log_slope(vw, gauss.decay());
    CHECK(gpred.abscissa == Abscissa::RSquared);
    CHECK(gpred.slope() == doctest::Approx(-0.7).epsilon(1e-15));

    CHECK_THROWS_AS(predicted_log_slope(make_term(1, std::vector<int>{1}),
                                        make_periodic_cosine(1, 0.5, 1).decay()),
                    DomainError);
}

TEST_CASE("token serialization round trips exactly") {
    const KedTerm vw = make_term(3, std::vector<int>{2});
    CHECK(term_token(vw) == "D=3;n=2;l=-3;q=1/1");
    CHECK(term_token(make_term(1, std::vector<int>{})) == "D=1;n=;l=3;q=3/1");

    for (int dim = 1; dim <= 4; ++dim) {
        for (const auto& term : enumerate_terms(dim, BoundaryMode::Localized, dim + 3)) {
            const std::string tok = term_token(term);
            const KedTerm back = parse_term_token(tok);
            CHECK(term_token(back) == tok);
            CHECK(back.dim() == term.dim());
            CHECK(back.exponents() == term.exponents());
        }
    }

    CHECK_THROWS_AS(parse_term_token("D=3;n=2;l=-2;q=1/1"), DomainError);   // wrong ell
    CHECK_THROWS_AS(parse_term_token("D=3;n=2;l=-3;q=1/2"), DomainError);   // wrong q
    CHECK_THROWS_AS(parse_term_token("D=0;n=;l=2;q=2/1"), DomainError);
    CHECK_THROWS_AS(parse_term_token("n=2;D=3"), DomainError);
    CHECK_THROWS_AS(parse_term_token("D=3;n=2;l=-3;q=1/1;x=9"), DomainError);
}

TEST_CASE("csv serialization round trips exactly") {
    CHECK(term_csv_header() == "dim,exponents,total_order,ell,q_num,q_den,class");
    const KedTerm g4 = make_term(3, std::vector<int>{0, 0, 0, 1});
    CHECK(term_csv_row(g4) == "3,\"0,0,0,1\",4,-2,1,3,LocalizedAdmissible");

    for (int dim = 1; dim <= 3; ++dim) {
        for (const auto& term : enumerate_terms(dim, BoundaryMode::Localized, dim + 3)) {
            const std::string row = term_csv_row(term);
            CHECK(term_csv_row(parse_term_csv_row(row)) == row);
        }
    }
    CHECK_THROWS_AS(parse_term_csv_row("3,\"2\",2,-3,1,2,LocalizedAdmissible"), DomainError);
    CHECK_THROWS_AS(parse_term_csv_row("junk"), DomainError);
}

TEST_CASE("exponent-vector text grammar") {
    CHECK(ExponentVector::parse("0,0,1").entries() == std::vector<int>{0, 0, 1});
    CHECK(ExponentVector::parse("").empty());
    CHECK_THROWS_AS(ExponentVector::parse("1,0"), DomainError);
    CHECK_THROWS_AS(ExponentVector::parse("1,,2"), DomainError);
    CHECK_THROWS_AS(ExponentVector::parse("a"), DomainError);
    CHECK_THROWS_AS(ExponentVector::parse("-1"), DomainError);
    CHECK(ExponentVector::parse("2,1").total_order() == 4);
    CHECK(ExponentVector::parse("2,1").exponent_sum() == 3);
    CHECK(ExponentVector::parse("2,1").max_order() == 2);
}
