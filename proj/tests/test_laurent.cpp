#include <doctest.h>

#include "bkw/laurent.hpp"

#include <cmath>

using bkw::Laurent;

TEST_CASE("laurent arithmetic and printing") {
    const Laurent x = Laurent::x();
    const Laurent c = x + Laurent::monomial(-1);
    const Laurent sqrt_q = Laurent::monomial(2) + Laurent::monomial(-2);
    CHECK(c * c - 2 == sqrt_q);
    CHECK((c * c - 2 - sqrt_q).is_zero());
    CHECK(sqrt_q.shifted(2).to_string() == "x^4 + 1");
    CHECK(Laurent().to_string() == "0");
    CHECK(Laurent::monomial(-1, mpq_class(1, 2)).to_string() == "1/2*x^-1");
    CHECK((x - 3).to_string() == "x - 3");
    CHECK(c.pow(3).coefficient(1) == 3);
    CHECK(c.pow(0) == Laurent(1));
}

TEST_CASE("laurent degrees and trimming") {
    const Laurent p = Laurent::monomial(-2) + Laurent::monomial(3, 5);
    CHECK(p.low_degree() == -2);
    CHECK(p.high_degree() == 3);
    CHECK(p.term_count() == 2);
    CHECK((p - p).is_zero());
    CHECK((p - Laurent::monomial(3, 5)).high_degree() == -2);
}

TEST_CASE("laurent exact division") {
    const Laurent c = Laurent::x() + Laurent::monomial(-1);
    const Laurent q = Laurent::monomial(5) - Laurent::monomial(-3, 7) + 2;
    CHECK((q * c.pow(4)).divide_exact(c.pow(4)) == q);
    CHECK((q * c).divide_exact(q) == c);
    CHECK_THROWS_AS(q.divide_exact(Laurent()), std::domain_error);
    CHECK_THROWS_AS((q + 1).divide_exact(c), std::domain_error);
}

TEST_CASE("laurent substitution and evaluation") {
    const Laurent p = Laurent::monomial(4) + 1;
    CHECK(p.substitute_inverse() == Laurent::monomial(-4) + 1);
    CHECK(p.substitute_inverse().substitute_inverse() == p);
    CHECK(p.evaluate(2.0) == doctest::Approx(17.0));
    CHECK(p.evaluate(mpq_class(1, 2)) == mpq_class(17, 16));
    const double x = std::exp(0.25);
    const Laurent c = Laurent::x() + Laurent::monomial(-1);
    CHECK(c.evaluate(x) == doctest::Approx(2.0 * std::cosh(0.25)).epsilon(1e-15));
}

TEST_CASE("rational parsing") {
    CHECK(bkw::parse_rational("2/3") == mpq_class(2, 3));
    CHECK(bkw::parse_rational("0.75") == mpq_class(3, 4));
    CHECK(bkw::parse_rational("-1.5") == mpq_class(-3, 2));
    CHECK(bkw::parse_rational("9") == 9);
    CHECK(bkw::parse_rational(".5") == mpq_class(1, 2));
    CHECK_THROWS_AS(bkw::parse_rational("abc"), std::invalid_argument);
    CHECK_THROWS_AS(bkw::parse_rational("1e3"), std::invalid_argument);
    CHECK(bkw::rational_string(mpq_class(6, 4)) == "3/2");
}
