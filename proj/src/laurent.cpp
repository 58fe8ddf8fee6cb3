#include "bkw/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bkw {

Laurent::Laurent(long value) : Laurent(mpq_class(value)) {}

Laurent::Laurent(const mpq_class& value) {
    if (value != 0) coeffs_.push_back(value);
}

Laurent Laurent::monomial(int exponent, const mpq_class& coeff) {
    Laurent out;
    if (coeff != 0) {
        out.low_ = exponent;
        out.coeffs_.push_back(coeff);
    }
    return out;
}

int Laurent::low_degree() const {
    if (is_zero()) throw std::domain_error("degree of the zero Laurent polynomial");
    return low_;
}

int Laurent::high_degree() const {
    if (is_zero()) throw std::domain_error("degree of the zero Laurent polynomial");
    return low_ + static_cast<int>(coeffs_.size()) - 1;
}

std::size_t Laurent::term_count() const {
    return static_cast<std::size_t>(
        std::count_if(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c != 0; }));
}

mpq_class Laurent::coefficient(int exponent) const {
    const long k = static_cast<long>(exponent) - low_;
    if (k < 0 || k >= static_cast<long>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

void Laurent::trim() {
    std::size_t first = 0;
    while (first < coeffs_.size() && coeffs_[first] == 0) ++first;
    if (first == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1] == 0) --last;
    if (first > 0 || last < coeffs_.size()) {
        coeffs_ = std::vector<mpq_class>(coeffs_.begin() + static_cast<long>(first),
                                         coeffs_.begin() + static_cast<long>(last));
        low_ += static_cast<int>(first);
    }
}

Laurent& Laurent::operator+=(const Laurent& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    const int lo = std::min(low_, rhs.low_);
    const int hi = std::max(high_degree(), rhs.high_degree());
    if (lo < low_ || hi > high_degree()) {
        std::vector<mpq_class> grown(static_cast<std::size_t>(hi - lo + 1));
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            grown[static_cast<std::size_t>(low_ - lo) + k] = std::move(coeffs_[k]);
        coeffs_ = std::move(grown);
        low_ = lo;
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k)
        coeffs_[static_cast<std::size_t>(rhs.low_ - low_) + k] += rhs.coeffs_[k];
    trim();
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& rhs) { return *this += -rhs; }

Laurent Laurent::operator-() const {
    Laurent out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Laurent operator*(const Laurent& lhs, const Laurent& rhs) {
    Laurent out;
    if (lhs.is_zero() || rhs.is_zero()) return out;
    out.low_ = lhs.low_ + rhs.low_;
    out.coeffs_.assign(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, mpq_class(0));
    mpq_class tmp;
    for (std::size_t a = 0; a < lhs.coeffs_.size(); ++a) {
        if (lhs.coeffs_[a] == 0) continue;
        for (std::size_t b = 0; b < rhs.coeffs_.size(); ++b) {
            if (rhs.coeffs_[b] == 0) continue;
            mpq_mul(tmp.get_mpq_t(), lhs.coeffs_[a].get_mpq_t(), rhs.coeffs_[b].get_mpq_t());
            out.coeffs_[a + b] += tmp;
        }
    }
    out.trim();
    return out;
}

Laurent& Laurent::operator*=(const Laurent& rhs) { return *this = *this * rhs; }

bool operator==(const Laurent& a, const Laurent& b) {
    return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
}

Laurent Laurent::shifted(int k) const {
    Laurent out = *this;
    if (!out.is_zero()) out.low_ += k;
    return out;
}

Laurent Laurent::pow(unsigned n) const {
    Laurent result(1);
    Laurent base = *this;
    while (n > 0) {
        if (n & 1u) result *= base;
        n >>= 1u;
        if (n > 0) base *= base;
    }
    return result;
}

Laurent Laurent::divide_exact(const Laurent& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("division by the zero Laurent polynomial");
    if (is_zero()) return {};
    // Long division from the top degree; both operands are treated as
    // ordinary polynomials after factoring out their lowest monomials.
    std::vector<mpq_class> rem = coeffs_;
    const auto& div = divisor.coeffs_;
    if (rem.size() < div.size())
        throw std::domain_error("Laurent division leaves a remainder");
    const std::size_t qlen = rem.size() - div.size() + 1;
    std::vector<mpq_class> quot(qlen);
    const mpq_class& lead = div.back();
    for (std::size_t step = qlen; step-- > 0;) {
        const mpq_class& top = rem[step + div.size() - 1];
        if (top == 0) continue;
        mpq_class factor = top / lead;
        for (std::size_t k = 0; k < div.size(); ++k) rem[step + k] -= factor * div[k];
        quot[step] = factor;
    }
    for (const auto& r : rem)
        if (r != 0) throw std::domain_error("Laurent division leaves a remainder");
    Laurent out;
    out.low_ = low_ - divisor.low_;
    out.coeffs_ = std::move(quot);
    out.trim();
    return out;
}

Laurent Laurent::substitute_inverse() const {
    Laurent out;
    if (is_zero()) return out;
    out.low_ = -high_degree();
    out.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    return out;
}

double Laurent::evaluate(double x) const {
    if (is_zero()) return 0.0;
    // Horner on the stored block, then the x^low_ factor.
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
    return acc * std::pow(x, low_);
}

mpq_class Laurent::evaluate(const mpq_class& x) const {
    if (is_zero()) return 0;
    if (x == 0) throw std::domain_error("evaluating a Laurent polynomial at zero");
    mpq_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    mpq_class scale = 1;
    const mpq_class base = low_ >= 0 ? x : mpq_class(1) / x;
    for (int k = 0; k < std::abs(low_); ++k) scale *= base;
    return acc * scale;
}

std::string rational_string(const mpq_class& value) {
    mpq_class v = value;
    v.canonicalize();
    return v.get_str();
}

mpq_class parse_rational(const std::string& text) {
    std::string t = text;
    if (t.empty()) throw std::invalid_argument("empty number");
    try {
        const auto dot = t.find('.');
        if (dot == std::string::npos) {
            mpq_class v(t, 10);
            v.canonicalize();
            return v;
        }
        if (t.find_first_of("/eE") != std::string::npos) throw std::invalid_argument(text);
        const std::string frac = t.substr(dot + 1);
        std::string whole = t.substr(0, dot);
        bool negative = !whole.empty() && whole[0] == '-';
        if (negative || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
        if (whole.empty()) whole = "0";
        mpz_class num(whole + frac, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        mpq_class v(negative ? mpz_class(-num) : num, den);
        v.canonicalize();
        return v;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("not a rational number: " + text);
    }
}

std::string Laurent::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const mpq_class& c = coeffs_[k];
        if (c == 0) continue;
        const int e = low_ + static_cast<int>(k);
        mpq_class mag = abs(c);
        if (first) {
            if (c < 0) out << "-";
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (e == 0) {
            out << rational_string(mag);
            continue;
        }
        if (mag != 1) out << rational_string(mag) << "*";
        out << "x";
        if (e != 1) out << "^" << e;
    }
    return out.str();
}

}  // namespace bkw
