#pragma once

#include <prepllab/gaussian.hpp>

#include <complex>
#include <utility>
#include <vector>

namespace prepllab {

// Univariate polynomial over Q(i) in the family parameter. Coefficients are
// stored low to high; the representation is normalized so the highest stored
// coefficient is nonzero. The zero polynomial has degree -1.
class ParamPolynomial {
public:
    ParamPolynomial() = default;
    explicit ParamPolynomial(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) {
        trim();
    }
    static ParamPolynomial constant(GaussianRational v);
    static ParamPolynomial variable();

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    size_t coefficient_count() const { return c_.size(); }

    // Zero beyond the stored degree.
    const GaussianRational& coeff(int k) const;
    const GaussianRational& leading() const;
    const std::vector<GaussianRational>& coeffs() const { return c_; }

    GaussianRational eval(const GaussianRational& at) const;
    std::complex<double> eval(std::complex<double> at) const;
    std::vector<std::complex<double>> to_complex_coeffs() const;

    ParamPolynomial derivative() const;

    friend ParamPolynomial operator+(const ParamPolynomial& a, const ParamPolynomial& b);
    friend ParamPolynomial operator-(const ParamPolynomial& a, const ParamPolynomial& b);
    friend ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b);
    ParamPolynomial operator-() const;
    ParamPolynomial& operator+=(const ParamPolynomial& o) { return *this = *this + o; }
    ParamPolynomial& operator-=(const ParamPolynomial& o) { return *this = *this - o; }
    ParamPolynomial& operator*=(const ParamPolynomial& o) { return *this = *this * o; }

    friend bool operator==(const ParamPolynomial& a, const ParamPolynomial& b) {
        return a.c_ == b.c_;
    }
    friend bool operator!=(const ParamPolynomial& a, const ParamPolynomial& b) {
        return !(a == b);
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<GaussianRational> c_;
};

// Quotient and remainder; the divisor must be nonzero.
std::pair<ParamPolynomial, ParamPolynomial> divrem(const ParamPolynomial& num,
                                                   const ParamPolynomial& den);

// Division that must leave no remainder; throws std::domain_error otherwise.
ParamPolynomial exact_divide(const ParamPolynomial& num, const ParamPolynomial& den);

// Euclidean gcd, returned content-normalized with a canonical leading unit so
// equal gcds compare equal. poly_gcd(p, 0) = normalized p; poly_gcd(0, 0) = 0.
ParamPolynomial poly_gcd(ParamPolynomial a, ParamPolynomial b);

// Splits p into content * primitive where the primitive part has coprime
// Gaussian-integer coefficients and a leading coefficient with argument in
// [0, 90 degrees): re > 0 and im >= 0. The zero polynomial yields (0, 0).
std::pair<ParamPolynomial, GaussianRational> content_normalize(const ParamPolynomial& p);

// p(s + shift).
ParamPolynomial compose_shift(const ParamPolynomial& p, const GaussianRational& shift);

// Exact determinant of a square matrix of polynomials (Bareiss fraction-free
// elimination with row pivoting).
ParamPolynomial poly_matrix_det(std::vector<std::vector<ParamPolynomial>> m);

}  // namespace prepllab
