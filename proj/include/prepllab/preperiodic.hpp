#pragma once

#include <prepllab/family.hpp>

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace prepllab {

// Affine orbit recursion t_{k+1} = (1/q0) * sum_j c_j(s) t_k^j with
// t_0 = a_num(s)/a_den. Available when the denominator form is a constant
// multiple of Y^d and the marked point has a constant denominator; evaluating
// the equation through the orbit instead of through expanded coefficients
// avoids the catastrophic cancellation the coefficient form suffers near the
// boundary of the connectedness locus.
struct OrbitEvaluation {
    int degree = 0;
    std::vector<ParamPolynomial> numerator;  // c_j(s), j = 0..degree
    GaussianRational q0;
    ParamPolynomial a_num;
    GaussianRational a_den;
};

// Exact equation for the parameters where the marked orbit returns: the
// content-normalized cross product of the iterates at steps m+n and m. The
// zero polynomial means the relation holds identically in s.
struct PrepEquation {
    ParamPolynomial poly;
    int m = 0;
    int n = 1;
    bool deflated = false;
    std::optional<OrbitEvaluation> orbit;

    bool persistent() const { return poly.is_zero(); }
};

struct PersistenceStatus {
    bool persistent = false;
    int m = 0;  // witness tail and period when persistent
    int n = 0;
};

enum class RootFlag { Simple, Cluster };

// value carries an exact upper bound on |poly(value)| (the residual, from
// rational interval-free evaluation) and an exact Newton-contraction
// simplicity certificate: |p| * |p''| / |p'|^2 < 1/4 at the root implies a
// genuine simple zero nearby; failures are flagged Cluster.
struct CertifiedRoot {
    std::complex<double> value;
    double residual = 0.0;
    double separation = 0.0;  // distance to the nearest other returned root
    RootFlag flag = RootFlag::Simple;
};

struct SolveResult {
    std::vector<CertifiedRoot> roots;  // sorted by (re, im)
    bool complete = true;
    int unconverged = 0;
};

// Cross product A_{m+n} B_m - A_m B_{m+n} of the exact marked iterates,
// content-normalized. With deflate, divides once by the gcd with each
// equation of tail m' <= m and period n' | n (lexicographic order); repeated
// factors beyond one copy stay, as multiplicity bookkeeping.
PrepEquation prep_equation(const MapFamily& fam, const MarkedPoint& a, int m, int n,
                           bool deflate = false, std::size_t max_coefficients = 10'000'000);

// Exact: persistent iff some equation with m + n <= bound vanishes
// identically, detected by an exact repeat among normalized iterates.
PersistenceStatus is_persistently_preperiodic(const MapFamily& fam, const MarkedPoint& a,
                                              int bound = 12,
                                              std::size_t max_coefficients = 1'000'000);

// All complex roots by simultaneous Aberth-Ehrlich iteration (deterministic
// initialization and sweep order), Newton-polished, then certified with exact
// rational arithmetic. Roots at the origin are split off exactly first.
// precision is the relative correction size at which a point freezes. A
// persistent (zero) equation is rejected with std::invalid_argument;
// non-convergence yields complete = false and a nonzero unconverged count.
SolveResult solve_parameters(const PrepEquation& eq, double precision = 1e-12,
                             int max_iterations = 400);

// The same equation with the roles of parameter and dynamical variable
// swapped: f must have constant coefficients, and the marked point is the
// identity section, so roots are the points with f^{m+n}(z) = f^m(z).
PrepEquation preperiodic_points_map(const MapFamily& f, int m, int n, bool deflate = false,
                                    std::size_t max_coefficients = 10'000'000);

struct CommonPrepResult {
    std::vector<std::complex<double>> points;  // sorted by (re, im)
    std::vector<int> counts;  // counts[k]: distinct points seen with both tails+periods <= k+1
    bool exact_mode = true;
    bool ambiguous = false;  // numeric matching saw competing pairs inside the tolerance
};

// Points preperiodic under both constant-coefficient maps, scanning all tail
// and period pairs up to the depth. Exact mode intersects equations by
// polynomial gcd over Q(i); numeric mode solves both sides and pairs roots by
// mutual nearest neighbor within match_tol.
CommonPrepResult common_preperiodic(const MapFamily& f, const MapFamily& g, int depth,
                                    bool exact = true, double match_tol = 1e-8);

// Greedy merge of points closer than tol; representative is the first seen.
std::vector<std::complex<double>> dedup_points(std::vector<std::complex<double>> pts,
                                               double tol);

}  // namespace prepllab
