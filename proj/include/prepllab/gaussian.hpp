#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace prepllab {

// Thrown on malformed textual input; the message carries the offending text
// and the character position where scanning failed.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Exact element of Q(i). Components are canonical GMP rationals.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long re) : re_(re), im_(0) {}
    GaussianRational(long re, long im) : re_(re), im_(im) {}
    GaussianRational(mpq_class re, mpq_class im = mpq_class(0))
        : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    // Accepts "3/2", "-7", "i", "-i", "2i", "1/2+1/3i", "1-2i", ...
    // No whitespace, no decimal points; denominators must be nonzero.
    static GaussianRational parse(std::string_view text);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }
    mpq_class norm2() const { return re_ * re_ + im_ * im_; }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    std::string str() const;

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                                a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }

private:
    mpq_class re_, im_;
};

namespace detail {

// Gaussian integers, used for content extraction when normalizing polynomials.
struct GaussianInt {
    mpz_class re, im;
    bool is_zero() const { return re == 0 && im == 0; }
};

// Euclidean gcd in Z[i] with nearest-lattice-point division. The result is
// determined up to a unit; callers needing a canonical representative must
// normalize it themselves.
GaussianInt gi_gcd(GaussianInt a, GaussianInt b);

}  // namespace detail

}  // namespace prepllab
