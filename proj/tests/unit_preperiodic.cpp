#include <doctest.h>

#include <prepllab/preperiodic.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace prepllab;

namespace {

ParamPolynomial P(std::initializer_list<const char*> coeffs_low_to_high) {
    std::vector<GaussianRational> c;
    for (const char* t : coeffs_low_to_high) c.push_back(GaussianRational::parse(t));
    return ParamPolynomial(std::move(c));
}

MapFamily quad_family() {
    HomogeneousForm num{2, {P({"0", "1"}), P({"0"}), P({"1"})}};
    HomogeneousForm den{2, {P({"1"}), P({"0"}), P({"0"})}};
    return make_family(num, den, {MarkedPoint{P({"0"}), P({"1"}), "critical"}}, "quad");
}

// z^2 as a constant family; the identity marked point turns parameter
// equations into dynamical-variable equations.
MapFamily square_map() {
    HomogeneousForm num{2, {P({"0"}), P({"0"}), P({"1"})}};
    HomogeneousForm den{2, {P({"1"}), P({"0"}), P({"0"})}};
    return make_family(num, den, {}, "square");
}

// z^2 + c for a constant rational c.
MapFamily poly_map(const char* c) {
    HomogeneousForm num{2, {P({c}), P({"0"}), P({"1"})}};
    HomogeneousForm den{2, {P({"1"}), P({"0"}), P({"0"})}};
    return make_family(num, den, {}, std::string("z2+") + c);
}

// (z^2 + s)/z with marked point (1:1).
MapFamily rational_family() {
    HomogeneousForm num{2, {P({"0", "1"}), P({"0"}), P({"1"})}};
    HomogeneousForm den{2, {P({"0"}), P({"1"}), P({"0"})}};
    return make_family(num, den, {MarkedPoint{P({"1"}), P({"1"}), "one"}}, "rational");
}

MarkedPoint origin() { return MarkedPoint{P({"0"}), P({"1"}), "critical"}; }

std::vector<std::complex<double>> values_of(const SolveResult& r) {
    std::vector<std::complex<double>> v;
    for (const auto& root : r.roots) v.push_back(root.value);
    return v;
}

bool contains_point(const std::vector<std::complex<double>>& pts, std::complex<double> p,
                    double tol) {
    for (auto q : pts)
        if (std::abs(q - p) <= tol) return true;
    return false;
}

// Orbit of z0 under the fiber, renormalized each step; chordal distance
// between iterates m+n and m.
double orbit_return_distance(const FiberMap& f, std::complex<double> z0, int m, int n) {
    std::complex<double> X = z0, Y = 1.0;
    std::complex<double> Xm = X, Ym = Y;
    for (int k = 1; k <= m + n; ++k) {
        auto nxt = f.apply(X, Y);
        double scale = std::max(std::abs(nxt.first), std::abs(nxt.second));
        X = nxt.first / scale;
        Y = nxt.second / scale;
        if (k == m) {
            Xm = X;
            Ym = Y;
        }
    }
    return chordal(X, Y, Xm, Ym);
}

double orbit_return_distance(const MapFamily& fam, std::complex<double> s,
                             std::complex<double> z0, int m, int n) {
    return orbit_return_distance(specialize(fam, s), z0, m, n);
}

// True when some return with tail+period <= depth comes back within tol.
bool numerically_preperiodic(const MapFamily& constant_map, std::complex<double> z0, int depth,
                             double tol) {
    FiberMap f = specialize(constant_map, 0.0);
    for (int m = 0; m + 1 <= depth; ++m)
        for (int n = 1; m + n <= depth; ++n)
            if (orbit_return_distance(f, z0, m, n) <= tol) return true;
    return false;
}

double bisect_root(const std::vector<double>& coeffs, double lo, double hi) {
    auto eval = [&](double x) {
        double acc = 0.0;
        for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
        return acc;
    };
    double flo = eval(lo);
    REQUIRE(flo * eval(hi) < 0.0);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = eval(mid);
        if (flo * fm <= 0.0)
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("tail-period equations match hand-expanded quadratic-family polynomials") {
    MapFamily fam = quad_family();
    MarkedPoint a = origin();

    PrepEquation e01 = prep_equation(fam, a, 0, 1);
    CHECK(e01.poly == P({"0", "1"}));  // s
    CHECK(e01.m == 0);
    CHECK(e01.n == 1);
    CHECK_FALSE(e01.deflated);
    CHECK_FALSE(e01.persistent());

    CHECK(prep_equation(fam, a, 0, 2).poly == P({"0", "1", "1"}));            // s^2 + s
    CHECK(prep_equation(fam, a, 0, 3).poly == P({"0", "1", "1", "2", "1"}));  // s^4+2s^3+s^2+s
    CHECK(prep_equation(fam, a, 1, 1).poly == P({"0", "0", "1"}));            // s^2
    CHECK(prep_equation(fam, a, 2, 1).poly == P({"0", "0", "0", "2", "1"}));  // s^4 + 2s^3

    // Well-conditioned orbit evaluation applies: polynomial denominator with a
    // constant scale and a constant-denominator marked point.
    CHECK(e01.orbit.has_value());
    CHECK(prep_equation(fam, a, 0, 3).orbit.has_value());

    CHECK_THROWS_AS(prep_equation(fam, a, 0, 25, false, 100), ResourceLimitError);
}

TEST_CASE("parameter equation degrees follow the doubling law") {
    MapFamily fam = quad_family();
    MarkedPoint a = origin();
    int expected = 1;
    for (int n = 1; n <= 6; ++n) {
        CHECK(prep_equation(fam, a, 0, n).poly.degree() == expected);
        expected *= 2;
    }
}

TEST_CASE("persistently preperiodic marked points yield the zero equation") {
    MapFamily sq = square_map();
    MarkedPoint zero = origin();

    PrepEquation eq = prep_equation(sq, zero, 0, 1);
    CHECK(eq.persistent());
    CHECK(eq.poly.is_zero());
    CHECK_THROWS_AS(solve_parameters(eq), std::invalid_argument);

    PersistenceStatus st = is_persistently_preperiodic(sq, zero, 2);
    CHECK(st.persistent);
    CHECK(st.m == 0);
    CHECK(st.n == 1);

    MapFamily quad = quad_family();
    MarkedPoint inf{P({"1"}), P({"0"}), "infinity"};
    PersistenceStatus at_inf = is_persistently_preperiodic(quad, inf, 2);
    CHECK(at_inf.persistent);
    CHECK(at_inf.m == 0);
    CHECK(at_inf.n == 1);

    CHECK_FALSE(is_persistently_preperiodic(quad, origin(), 6).persistent);
}

TEST_CASE("deflation removes lower tail-period factors once each") {
    MapFamily fam = quad_family();
    MarkedPoint a = origin();

    // s^4 + 2s^3 = s^3 (s + 2); dividing out the (0,1) and (1,1) factors
    // leaves exactly the strictly tail-2 parameter.
    PrepEquation d21 = prep_equation(fam, a, 2, 1, true);
    CHECK(d21.deflated);
    CHECK(d21.poly == P({"2", "1"}));

    // s^2 loses one factor of s to the (0,1) equation; the second copy is
    // multiplicity bookkeeping and stays.
    CHECK(prep_equation(fam, a, 1, 1, true).poly == P({"0", "1"}));

    // Deflated equations drop the orbit-evaluation shortcut.
    CHECK_FALSE(d21.orbit.has_value());
}

TEST_CASE("deflation and divisor equations exactly account for every factor") {
    MapFamily fam = quad_family();
    MarkedPoint a = origin();
    for (int m = 0; m <= 3; ++m) {
        for (int n = 1; m + n <= 4; ++n) {
            PrepEquation full = prep_equation(fam, a, m, n);
            PrepEquation defl = prep_equation(fam, a, m, n, true);
            auto [q, r] = divrem(full.poly, defl.poly);
            CHECK(r.is_zero());
            // The cofactor must be built entirely from lower tail-period
            // equations: repeated gcd division exhausts it.
            for (int mp = 0; mp <= m; ++mp) {
                for (int np = 1; np <= n; ++np) {
                    if (n % np != 0 || (mp == m && np == n)) continue;
                    ParamPolynomial lower = prep_equation(fam, a, mp, np).poly;
                    for (;;) {
                        ParamPolynomial g = poly_gcd(q, lower);
                        if (g.degree() < 1) break;
                        q = exact_divide(q, g);
                    }
                }
            }
            CHECK(q.degree() == 0);
        }
    }
}

TEST_CASE("equation solving certifies the small center equations") {
    MapFamily fam = quad_family();
    MarkedPoint a = origin();

    SolveResult r2 = solve_parameters(prep_equation(fam, a, 0, 2));
    REQUIRE(r2.roots.size() == 2);
    CHECK(r2.complete);
    CHECK(r2.unconverged == 0);
    CHECK(std::abs(r2.roots[0].value - std::complex<double>(-1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(r2.roots[1].value) <= 1e-12);
    for (const auto& root : r2.roots) {
        CHECK(root.residual <= 1e-12);
        CHECK(root.flag == RootFlag::Simple);
        CHECK(root.separation == doctest::Approx(1.0).epsilon(1e-9));
    }

    SolveResult r3 = solve_parameters(prep_equation(fam, a, 0, 3));
    REQUIRE(r3.roots.size() == 4);
    CHECK(r3.complete);

    // The parameter at the origin is recovered exactly.
    bool exact_zero = false;
    for (const auto& root : r3.roots)
        if (root.value == std::complex<double>(0.0, 0.0) && root.residual == 0.0)
            exact_zero = true;
    CHECK(exact_zero);

    // Independent bisection oracle for the real root of s^3 + 2s^2 + s + 1.
    double airplane = bisect_root({1.0, 1.0, 2.0, 1.0}, -2.0, -1.0);
    CHECK(airplane == doctest::Approx(-1.7548776662).epsilon(1e-7));
    bool found = false;
    for (const auto& root : r3.roots)
        if (std::abs(root.value - std::complex<double>(airplane, 0.0)) <= 1e-8) found = true;
    CHECK(found);
}

TEST_CASE("repeated roots come back flagged as clusters") {
    // (s - 1)^2, fed in directly.
    PrepEquation sq;
    sq.poly = P({"1", "-2", "1"});
    sq.m = 0;
    sq.n = 1;
    SolveResult r = solve_parameters(sq);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.complete);
    for (const auto& root : r.roots) {
        CHECK(std::abs(root.value - std::complex<double>(1.0, 0.0)) <= 1e-6);
        CHECK(root.flag == RootFlag::Cluster);
        CHECK(root.residual <= 1e-10);
    }

    // s^2 from the (1,1) quadratic-family equation: a double root at the
    // origin, recovered exactly by trailing-coefficient stripping.
    MapFamily fam = quad_family();
    SolveResult r0 = solve_parameters(prep_equation(fam, origin(), 1, 1));
    REQUIRE(r0.roots.size() == 2);
    for (const auto& root : r0.roots) {
        CHECK(root.value == std::complex<double>(0.0, 0.0));
        CHECK(root.residual == 0.0);
        CHECK(root.flag == RootFlag::Cluster);
    }
}

TEST_CASE("certified roots satisfy the defining orbit relation") {
    MapFamily fam = quad_family();
    MarkedPoint a = origin();
    for (int n = 1; n <= 6; ++n) {
        PrepEquation eq = prep_equation(fam, a, 0, n);
        SolveResult r = solve_parameters(eq);
        REQUIRE(int(r.roots.size()) == eq.poly.degree());
        CHECK(r.complete);
        for (const auto& root : r.roots) {
            CHECK(root.residual < 1e-10);
            CHECK(orbit_return_distance(fam, root.value, {0.0, 0.0}, 0, n) <= 1e-6);
        }
    }
    // A mixed tail: Misiurewicz-type parameters of tail 2.
    SolveResult r = solve_parameters(prep_equation(fam, a, 2, 1));
    for (const auto& root : r.roots)
        CHECK(orbit_return_distance(fam, root.value, {0.0, 0.0}, 2, 1) <= 1e-6);
    CHECK(contains_point(values_of(r), {-2.0, 0.0}, 1e-10));
}

TEST_CASE("the center battery to period ten deduplicates to the known count") {
    MapFamily fam = quad_family();
    MarkedPoint a = origin();
    std::vector<std::complex<double>> all;
    size_t with_multiplicity = 0;
    for (int n = 1; n <= 10; ++n) {
        SolveResult r = solve_parameters(prep_equation(fam, a, 0, n));
        CHECK(r.complete);
        REQUIRE(int(r.roots.size()) == (1 << (n - 1)));
        with_multiplicity += r.roots.size();
        for (const auto& root : r.roots) {
            CHECK(root.residual < 1e-8);
            all.push_back(root.value);
        }
    }
    CHECK(with_multiplicity == 1023);
    // Counting parameters with orbit period exactly n via Moebius inversion
    // of 2^(n-1) over divisors gives 983 distinct centers through period 10.
    CHECK(dedup_points(all, 1e-10).size() == 983);
}

TEST_CASE("point deduplication merges within tolerance only") {
    std::vector<std::complex<double>> pts = {
        {0.0, 0.0}, {1e-11, 0.0}, {1.0, 0.0}, {1.0, 5e-11}, {0.5, 0.5}};
    auto d = dedup_points(pts, 1e-10);
    CHECK(d.size() == 3);
    CHECK(dedup_points({}, 1e-10).empty());
}

TEST_CASE("equations without the orbit shortcut still solve from coefficients") {
    MapFamily fam = rational_family();
    PrepEquation eq = prep_equation(fam, fam.marked()[0], 0, 1);
    CHECK_FALSE(eq.orbit.has_value());
    // f_s(1) = 1 + s equals 1 exactly at s = 0.
    CHECK(eq.poly == P({"0", "1"}));
    SolveResult r = solve_parameters(eq);
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].value == std::complex<double>(0.0, 0.0));
}

TEST_CASE("dynamical preperiodicity equations recover classical root sets") {
    MapFamily sq = square_map();

    PrepEquation fixed = preperiodic_points_map(sq, 0, 1);
    CHECK(fixed.poly == P({"0", "-1", "1"}));  // z^2 - z

    PrepEquation tail = preperiodic_points_map(sq, 1, 1);
    CHECK(tail.poly == P({"0", "0", "-1", "0", "1"}));  // z^4 - z^2
    PrepEquation tail_deflated = preperiodic_points_map(sq, 1, 1, true);
    CHECK(tail_deflated.poly == P({"0", "1", "1"}));  // z^2 + z

    // Degree-two Chebyshev-like map: period-2 points are 2cos(2 pi k / 3) and
    // the golden-ratio pair 2cos(2 pi k / 5).
    MapFamily cheb = poly_map("-2");
    PrepEquation p2 = preperiodic_points_map(cheb, 0, 2);
    CHECK(p2.poly == P({"2", "-1", "-4", "0", "1"}));  // z^4 - 4z^2 - z + 2
    SolveResult r = solve_parameters(p2);
    REQUIRE(r.roots.size() == 4);
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    auto vals = values_of(r);
    CHECK(contains_point(vals, {2.0, 0.0}, 1e-9));
    CHECK(contains_point(vals, {-1.0, 0.0}, 1e-9));
    CHECK(contains_point(vals, {golden, 0.0}, 1e-9));
    CHECK(contains_point(vals, {-golden - 1.0, 0.0}, 1e-9));

    CHECK_THROWS_AS(preperiodic_points_map(quad_family(), 0, 1), FamilyError);
}

TEST_CASE("common preperiodic points of a map with itself enumerate its full set") {
    MapFamily sq = square_map();
    CommonPrepResult r = common_preperiodic(sq, sq, 3);
    CHECK(r.exact_mode);
    CHECK_FALSE(r.ambiguous);
    REQUIRE(r.counts.size() == 3);
    // Roots of unity of orders dividing 3, 4, 6, 7 plus the origin.
    CHECK(r.counts[0] == 2);
    CHECK(r.counts[1] == 5);
    CHECK(r.counts[2] == 15);
    CHECK(int(r.points.size()) == 15);
    CHECK(contains_point(r.points, {0.0, 0.0}, 1e-9));
    CHECK(contains_point(r.points, {1.0, 0.0}, 1e-9));
    CHECK(contains_point(r.points, {-1.0, 0.0}, 1e-9));
    CHECK(contains_point(r.points, {0.0, 1.0}, 1e-9));
    CHECK(contains_point(r.points, {0.0, -1.0}, 1e-9));
    for (auto p : r.points) CHECK(numerically_preperiodic(sq, p, 3, 1e-6));
}

TEST_CASE("two classical quadratic maps share exactly three preperiodic points") {
    MapFamily sq = square_map();
    MapFamily cheb = poly_map("-2");

    CommonPrepResult exact = common_preperiodic(sq, cheb, 5);
    CHECK(exact.exact_mode);
    REQUIRE(exact.counts.size() == 5);
    CHECK(exact.counts[0] == 0);
    CHECK(exact.counts[1] == 2);
    CHECK(exact.counts[2] == 3);
    CHECK(exact.counts[3] == 3);
    CHECK(exact.counts[4] == 3);
    REQUIRE(exact.points.size() == 3);
    CHECK(std::abs(exact.points[0] - std::complex<double>(-1.0, 0.0)) <= 1e-9);
    CHECK(std::abs(exact.points[1] - std::complex<double>(0.0, 0.0)) <= 1e-9);
    CHECK(std::abs(exact.points[2] - std::complex<double>(1.0, 0.0)) <= 1e-9);
    for (auto p : exact.points) {
        CHECK(numerically_preperiodic(sq, p, 5, 1e-6));
        CHECK(numerically_preperiodic(cheb, p, 5, 1e-6));
    }

    // Numeric mutual-nearest matching reproduces the exact answer. The origin
    // is a multiple root on the Chebyshev-like side, so its solved copies
    // stall around 1e-8 and the competing pair is flagged as ambiguous.
    CommonPrepResult numeric = common_preperiodic(sq, cheb, 5, false, 1e-6);
    CHECK_FALSE(numeric.exact_mode);
    CHECK(numeric.ambiguous);
    REQUIRE(numeric.points.size() == 3);
    for (size_t k = 0; k < 3; ++k)
        CHECK(std::abs(numeric.points[k] - exact.points[k]) <= 1e-8);
    CHECK(numeric.counts == exact.counts);
}

TEST_CASE("common preperiodic counts never decrease with depth") {
    MapFamily f = poly_map("1");
    MapFamily g = poly_map("-1");
    CommonPrepResult r = common_preperiodic(f, g, 4);
    REQUIRE(r.counts.size() == 4);
    for (size_t k = 1; k < r.counts.size(); ++k) CHECK(r.counts[k] >= r.counts[k - 1]);
    CHECK(int(r.points.size()) == r.counts.back());
    CHECK(r.points.size() <= 8);
    for (auto p : r.points) {
        CHECK(numerically_preperiodic(f, p, 4, 1e-6));
        CHECK(numerically_preperiodic(g, p, 4, 1e-6));
    }
}
