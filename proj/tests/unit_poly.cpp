#include <doctest.h>

#include <prepllab/poly.hpp>

using namespace prepllab;

namespace {

ParamPolynomial P(std::initializer_list<const char*> coeffs_low_to_high) {
    std::vector<GaussianRational> c;
    for (const char* t : coeffs_low_to_high) c.push_back(GaussianRational::parse(t));
    return ParamPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("construction trims trailing zeros and reports degree") {
    CHECK(ParamPolynomial().degree() == -1);
    CHECK(P({"0"}).degree() == -1);
    CHECK(P({"1", "0", "0"}).degree() == 0);
    CHECK(P({"0", "1"}).degree() == 1);
    CHECK(P({"0", "1"}) == ParamPolynomial::variable());
    CHECK(P({"5"}).coeff(0) == GaussianRational(5));
    CHECK(P({"5"}).coeff(3) == GaussianRational());
}

TEST_CASE("ring arithmetic") {
    auto s = ParamPolynomial::variable();
    auto p = (s + ParamPolynomial::constant(1)) * (s - ParamPolynomial::constant(1));
    CHECK(p == P({"-1", "0", "1"}));
    CHECK(p - p == ParamPolynomial());
    CHECK((p * ParamPolynomial()).degree() == -1);

    // (s^2 + s)^2 + s = s^4 + 2 s^3 + s^2 + s
    auto q = P({"0", "1", "1"});
    CHECK(q * q + s == P({"0", "1", "1", "2", "1"}));
}

TEST_CASE("division with remainder and exact division") {
    auto num = P({"0", "1", "1", "2", "1"});  // s^4+2s^3+s^2+s
    auto [quot, rem] = divrem(num, ParamPolynomial::variable());
    CHECK(rem.degree() == -1);
    CHECK(quot == P({"1", "1", "2", "1"}));

    auto [q2, r2] = divrem(num, P({"1", "1"}));  // by s+1
    CHECK(q2 * P({"1", "1"}) + r2 == num);

    CHECK_THROWS_AS(divrem(num, ParamPolynomial()), std::domain_error);
    CHECK(exact_divide(num, quot) == ParamPolynomial::variable());
    CHECK_THROWS_AS(exact_divide(num, P({"1", "1", "1"})), std::domain_error);
}

TEST_CASE("gcd oracles") {
    // gcd((z^2-1)(z^2-4), z(z-1)) = z-1
    auto a = P({"4", "0", "-5", "0", "1"});
    auto b = P({"0", "-1", "1"});
    CHECK(poly_gcd(a, b) == P({"-1", "1"}));

    CHECK(poly_gcd(a, ParamPolynomial()) == a);
    CHECK(poly_gcd(ParamPolynomial(), ParamPolynomial()).degree() == -1);

    // Coprime inputs give the constant 1.
    CHECK(poly_gcd(P({"0", "1", "1"}), P({"2", "1"})) == ParamPolynomial::constant(1));

    // gcd is invariant under unit scaling of the inputs.
    auto scaled = a * ParamPolynomial::constant(GaussianRational(0, 3));
    CHECK(poly_gcd(scaled, b) == P({"-1", "1"}));
}

TEST_CASE("content normalization produces primitive canonical coefficients") {
    // (2+2i) s^2 + 4 s: content 2+2i, primitive part s^2 + (1-i) s.
    auto p = P({"0", "4", "2+2i"});
    auto [prim, content] = content_normalize(p);
    CHECK(content == GaussianRational(2, 2));
    CHECK(prim == P({"0", "1-1i", "1"}));

    // Canonical unit: leading coefficient must have re > 0 and im >= 0.
    auto q = P({"0", "-2"});
    auto [prim2, content2] = content_normalize(q);
    CHECK(prim2 == P({"0", "1"}));
    CHECK(content2 == GaussianRational(-2));

    auto r = P({"3i"});
    auto [prim3, content3] = content_normalize(r);
    CHECK(prim3 == P({"1"}));
    CHECK(content3 == GaussianRational(0, 3));

    // The canonical unit sector is unique: all four rotations normalize alike.
    for (auto u : {GaussianRational(1), GaussianRational(-1), GaussianRational(0, 1),
                   GaussianRational(0, -1)}) {
        auto rotated = P({"0", "4", "2+2i"}) * ParamPolynomial::constant(u);
        CHECK(content_normalize(rotated).first == P({"0", "1-1i", "1"}));
    }

    auto [prim4, content4] = content_normalize(ParamPolynomial());
    CHECK(prim4.degree() == -1);
    CHECK(content4 == GaussianRational());

    CHECK(prim * ParamPolynomial::constant(content) == p);
}

TEST_CASE("shift composition") {
    // (s^2+s)(s+10) = s^2 + 21 s + 110
    auto p = P({"0", "1", "1"});
    CHECK(compose_shift(p, GaussianRational(10)) == P({"110", "21", "1"}));
    CHECK(compose_shift(p, GaussianRational()) == p);
    // Shifting back and forth is the identity.
    auto big = P({"1/2", "-3", "i", "7/5"});
    CHECK(compose_shift(compose_shift(big, GaussianRational(2, -1)), GaussianRational(-2, 1)) ==
          big);
}

TEST_CASE("evaluation: exact and floating point agree") {
    auto p = P({"0", "1", "1"});  // s^2+s
    auto at = GaussianRational(mpq_class(1, 2), mpq_class(1, 2));
    CHECK(p.eval(at) == GaussianRational(mpq_class(1, 2), mpq_class(1)));

    std::complex<double> z{0.5, 0.5};
    auto approx = p.eval(z);
    CHECK(std::abs(approx - std::complex<double>(0.5, 1.0)) < 1e-15);

    auto d = p.derivative();
    CHECK(d == P({"1", "2"}));
    CHECK(P({"1"}).derivative().degree() == -1);
}

TEST_CASE("fraction-free determinant matches cofactor expansion on small matrices") {
    auto c = [](long v) { return ParamPolynomial::constant(v); };
    auto s = ParamPolynomial::variable();

    std::vector<std::vector<ParamPolynomial>> m2 = {{c(1), s}, {s, c(1)}};
    CHECK(poly_matrix_det(m2) == c(1) - s * s);

    // Singular matrix.
    std::vector<std::vector<ParamPolynomial>> sing = {{s, s}, {s, s}};
    CHECK(poly_matrix_det(sing).degree() == -1);

    // 3x3 with a zero pivot forcing a row swap: det [[0,1,0],[1,0,0],[0,0,s]] = -s.
    std::vector<std::vector<ParamPolynomial>> sw = {
        {c(0), c(1), c(0)}, {c(1), c(0), c(0)}, {c(0), c(0), s}};
    CHECK(poly_matrix_det(sw) == c(0) - s);
}
