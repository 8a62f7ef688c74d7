#include <prepllab/gaussian.hpp>

namespace prepllab {

namespace {

struct Scanner {
    std::string_view text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("bad Gaussian rational \"" + std::string(text) + "\" at position " +
                         std::to_string(pos) + ": " + why);
    }
    bool done() const { return pos >= text.size(); }
    char peek() const { return done() ? '\0' : text[pos]; }

    // [sign] digits [/ digits]; empty digit run is reported by the caller.
    mpq_class rational(bool allow_empty_digits, bool* had_digits) {
        std::string num;
        if (peek() == '+' || peek() == '-') {
            if (text[pos] == '-') num.push_back('-');
            ++pos;
        }
        size_t digits = 0;
        while (!done() && text[pos] >= '0' && text[pos] <= '9') {
            num.push_back(text[pos]);
            ++pos;
            ++digits;
        }
        *had_digits = digits > 0;
        if (digits == 0) {
            if (!allow_empty_digits) fail("expected digits");
            num.push_back('1');
        }
        mpz_class n(num, 10);
        mpz_class d(1);
        if (peek() == '/') {
            ++pos;
            std::string den;
            while (!done() && text[pos] >= '0' && text[pos] <= '9') {
                den.push_back(text[pos]);
                ++pos;
            }
            if (den.empty()) fail("expected denominator digits");
            d = mpz_class(den, 10);
            if (d == 0) fail("zero denominator");
        }
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }
};

void append_rational(std::string& out, const mpq_class& q) {
    out += q.get_num().get_str();
    if (q.get_den() != 1) {
        out += '/';
        out += q.get_den().get_str();
    }
}

}  // namespace

GaussianRational GaussianRational::parse(std::string_view text) {
    Scanner sc{text};
    if (sc.done()) sc.fail("empty input");

    bool had_digits = false;
    mpq_class first = sc.rational(/*allow_empty_digits=*/true, &had_digits);
    if (!had_digits && sc.peek() != 'i') sc.fail("expected digits or 'i'");

    if (sc.done()) return GaussianRational(first);

    if (sc.peek() == 'i') {
        ++sc.pos;
        if (!sc.done()) sc.fail("trailing characters after imaginary unit");
        return GaussianRational(mpq_class(0), first);
    }

    if (sc.peek() != '+' && sc.peek() != '-') sc.fail("expected '+', '-' or 'i'");
    if (!had_digits) sc.fail("sign without digits");

    bool im_digits = false;
    mpq_class second = sc.rational(/*allow_empty_digits=*/true, &im_digits);
    if (sc.peek() != 'i') sc.fail("imaginary part must end in 'i'");
    ++sc.pos;
    if (!sc.done()) sc.fail("trailing characters");
    return GaussianRational(first, second);
}

std::string GaussianRational::str() const {
    if (is_zero()) return "0";
    std::string out;
    if (re_ != 0) append_rational(out, re_);
    if (im_ != 0) {
        if (im_ == 1) {
            if (!out.empty()) out += '+';
        } else if (im_ == -1) {
            out += '-';
        } else {
            if (!out.empty() && im_ > 0) out += '+';
            append_rational(out, im_);
        }
        out += 'i';
    }
    return out;
}

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    mpq_class n = b.norm2();
    if (n == 0) throw std::domain_error("division by zero in Q(i)");
    GaussianRational prod = a * b.conj();
    return GaussianRational(prod.re() / n, prod.im() / n);
}

namespace detail {

GaussianInt gi_gcd(GaussianInt a, GaussianInt b) {
    auto nearest = [](const mpz_class& num, const mpz_class& den) {
        // round(num/den) with ties toward +infinity; den > 0.
        mpz_class q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        if (2 * r >= den) ++q;
        return q;
    };
    while (!b.is_zero()) {
        mpz_class n = b.re * b.re + b.im * b.im;
        mpz_class xre = a.re * b.re + a.im * b.im;
        mpz_class xim = a.im * b.re - a.re * b.im;
        mpz_class qre = nearest(xre, n);
        mpz_class qim = nearest(xim, n);
        GaussianInt r{a.re - (qre * b.re - qim * b.im), a.im - (qre * b.im + qim * b.re)};
        a = b;
        b = r;
    }
    return a;
}

}  // namespace detail

}  // namespace prepllab
