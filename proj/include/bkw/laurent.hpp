#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace bkw {

// Exact Laurent polynomial in one variable x with rational coefficients.
//
// Stored densely: coeffs_[k] is the coefficient of x^(low_ + k). The
// representation is kept trimmed, so the leading and trailing stored
// coefficients are nonzero and the zero polynomial has no coefficients.
class Laurent {
public:
    Laurent() = default;
    Laurent(long value);  // NOLINT: implicit constant promotion is intended
    Laurent(const mpq_class& value);  // NOLINT

    static Laurent monomial(int exponent, const mpq_class& coeff = 1);
    static Laurent x() { return monomial(1); }

    bool is_zero() const { return coeffs_.empty(); }
    int low_degree() const;
    int high_degree() const;
    std::size_t term_count() const;

    mpq_class coefficient(int exponent) const;

    Laurent& operator+=(const Laurent& rhs);
    Laurent& operator-=(const Laurent& rhs);
    Laurent& operator*=(const Laurent& rhs);

    friend Laurent operator+(Laurent lhs, const Laurent& rhs) { return lhs += rhs; }
    friend Laurent operator-(Laurent lhs, const Laurent& rhs) { return lhs -= rhs; }
    friend Laurent operator*(const Laurent& lhs, const Laurent& rhs);
    Laurent operator-() const;

    friend bool operator==(const Laurent& a, const Laurent& b);

    // Multiply by x^k.
    Laurent shifted(int k) const;
    Laurent pow(unsigned n) const;

    // Exact quotient; throws std::domain_error when divisor is zero or does
    // not divide *this in Q[x, 1/x].
    Laurent divide_exact(const Laurent& divisor) const;

    // x -> 1/x
    Laurent substitute_inverse() const;

    double evaluate(double x) const;
    mpq_class evaluate(const mpq_class& x) const;

    // e.g. "x^4 + 1", "1/2*x^-1 - 3". Zero prints as "0".
    std::string to_string() const;

private:
    void trim();

    int low_ = 0;
    std::vector<mpq_class> coeffs_;
};

std::string rational_string(const mpq_class& value);

// Parses "3", "-2/3" or a decimal such as "0.75" exactly.
mpq_class parse_rational(const std::string& text);

}  // namespace bkw
