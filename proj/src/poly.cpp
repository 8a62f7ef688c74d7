#include <prepllab/poly.hpp>

namespace prepllab {

namespace {
const GaussianRational kZero{};
}

ParamPolynomial ParamPolynomial::constant(GaussianRational v) {
    std::vector<GaussianRational> c;
    c.push_back(std::move(v));
    return ParamPolynomial(std::move(c));
}

ParamPolynomial ParamPolynomial::variable() {
    return ParamPolynomial({GaussianRational(), GaussianRational(1)});
}

const GaussianRational& ParamPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[k];
}

const GaussianRational& ParamPolynomial::leading() const {
    return c_.empty() ? kZero : c_.back();
}

GaussianRational ParamPolynomial::eval(const GaussianRational& at) const {
    GaussianRational acc;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * at + c_[k];
    return acc;
}

std::complex<double> ParamPolynomial::eval(std::complex<double> at) const {
    std::complex<double> acc = 0.0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * at + c_[k].to_complex();
    return acc;
}

std::vector<std::complex<double>> ParamPolynomial::to_complex_coeffs() const {
    std::vector<std::complex<double>> out(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) out[k] = c_[k].to_complex();
    return out;
}

ParamPolynomial ParamPolynomial::derivative() const {
    if (c_.size() <= 1) return ParamPolynomial();
    std::vector<GaussianRational> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussianRational(long(k));
    return ParamPolynomial(std::move(d));
}

ParamPolynomial operator+(const ParamPolynomial& a, const ParamPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) {
        c[k] = a.coeff(int(k)) + b.coeff(int(k));
    }
    return ParamPolynomial(std::move(c));
}

ParamPolynomial operator-(const ParamPolynomial& a, const ParamPolynomial& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) {
        c[k] = a.coeff(int(k)) - b.coeff(int(k));
    }
    return ParamPolynomial(std::move(c));
}

ParamPolynomial ParamPolynomial::operator-() const {
    std::vector<GaussianRational> c(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) c[k] = -c_[k];
    return ParamPolynomial(std::move(c));
}

ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return ParamPolynomial();
    std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            c[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return ParamPolynomial(std::move(c));
}

std::pair<ParamPolynomial, ParamPolynomial> divrem(const ParamPolynomial& num,
                                                   const ParamPolynomial& den) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    if (num.degree() < den.degree()) return {ParamPolynomial(), num};
    std::vector<GaussianRational> r(num.coeffs());
    const int dn = num.degree();
    const int dd = den.degree();
    std::vector<GaussianRational> q(size_t(dn - dd) + 1);
    const GaussianRational& lead = den.leading();
    for (int k = dn; k >= dd; --k) {
        if (r[size_t(k)].is_zero()) continue;
        GaussianRational f = r[size_t(k)] / lead;
        q[size_t(k - dd)] = f;
        for (int j = 0; j <= dd; ++j) {
            r[size_t(k - dd + j)] -= f * den.coeff(j);
        }
    }
    return {ParamPolynomial(std::move(q)), ParamPolynomial(std::move(r))};
}

ParamPolynomial exact_divide(const ParamPolynomial& num, const ParamPolynomial& den) {
    auto [q, r] = divrem(num, den);
    if (!r.is_zero()) throw std::domain_error("polynomial division left a remainder");
    return q;
}

ParamPolynomial poly_gcd(ParamPolynomial a, ParamPolynomial b) {
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        (void)q;
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) {
            // Keep coefficients small: the gcd is only defined up to units.
            GaussianRational inv = GaussianRational(1) / b.leading();
            std::vector<GaussianRational> scaled(b.coeffs());
            for (auto& c : scaled) c *= inv;
            b = ParamPolynomial(std::move(scaled));
        }
    }
    if (a.is_zero()) return a;
    return content_normalize(a).first;
}

std::pair<ParamPolynomial, GaussianRational> content_normalize(const ParamPolynomial& p) {
    if (p.is_zero()) return {ParamPolynomial(), GaussianRational()};

    // Common denominator of all real/imaginary parts.
    mpz_class den(1);
    for (const auto& c : p.coeffs()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.re().get_den().get_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.im().get_den().get_mpz_t());
    }

    // Gaussian-integer gcd of the scaled coefficients.
    detail::GaussianInt g{0, 0};
    for (const auto& c : p.coeffs()) {
        mpq_class re = c.re() * den;
        mpq_class im = c.im() * den;
        g = detail::gi_gcd(g, detail::GaussianInt{re.get_num(), im.get_num()});
        if (g.re * g.re + g.im * g.im == 1) break;
    }

    GaussianRational content(mpq_class(g.re, den), mpq_class(g.im, den));
    std::vector<GaussianRational> prim(p.coeffs());
    for (auto& c : prim) c /= content;

    // Fold a unit into the content so the primitive leading coefficient is
    // canonical. Exactly one of the four unit rotations of a nonzero Gaussian
    // integer has argument in [0, 90), i.e. re > 0 and im >= 0.
    const GaussianRational& lead = prim.back();
    GaussianRational unit(1);
    for (const GaussianRational& u :
         {GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1),
          GaussianRational(0, -1)}) {
        GaussianRational cand = u * lead;
        if (cand.re() > 0 && cand.im() >= 0) {
            unit = u;
            break;
        }
    }
    for (auto& c : prim) c *= unit;
    return {ParamPolynomial(std::move(prim)), content / unit};
}

ParamPolynomial compose_shift(const ParamPolynomial& p, const GaussianRational& shift) {
    if (shift.is_zero() || p.is_zero()) return p;
    // Horner in (s + shift).
    ParamPolynomial x = ParamPolynomial({shift, GaussianRational(1)});
    ParamPolynomial acc;
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * x + ParamPolynomial::constant(p.coeff(k));
    }
    return acc;
}

ParamPolynomial poly_matrix_det(std::vector<std::vector<ParamPolynomial>> m) {
    const size_t n = m.size();
    for (const auto& row : m) {
        if (row.size() != n) throw std::domain_error("determinant of a non-square matrix");
    }
    if (n == 0) return ParamPolynomial::constant(1);

    bool negate = false;
    ParamPolynomial prev = ParamPolynomial::constant(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return ParamPolynomial();
            std::swap(m[k], m[swap_row]);
            negate = !negate;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            }
            m[i][k] = ParamPolynomial();
        }
        prev = m[k][k];
    }
    ParamPolynomial det = m[n - 1][n - 1];
    return negate ? -det : det;
}

}  // namespace prepllab
