#pragma once

#include <prepllab/poly.hpp>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prepllab {

class FamilyError : public std::runtime_error {
  public:
    explicit FamilyError(const std::string& what) : std::runtime_error(what) {}
};

class UnsupportedDegreeError : public FamilyError {
  public:
    explicit UnsupportedDegreeError(const std::string& what) : FamilyError(what) {}
};

class SingularFamilyError : public FamilyError {
  public:
    explicit SingularFamilyError(const std::string& what) : FamilyError(what) {}
};

class DegenerateFiberError : public FamilyError {
  public:
    explicit DegenerateFiberError(const std::string& what) : FamilyError(what) {}
};

class ResourceLimitError : public FamilyError {
  public:
    explicit ResourceLimitError(const std::string& what) : FamilyError(what) {}
};

// Binary form of degree `deg` in (X, Y); c[k] multiplies X^k Y^(deg-k).
struct HomogeneousForm {
    int deg = 0;
    std::vector<ParamPolynomial> c;
};

// Projective point (A(s) : B(s)) with polynomial coordinates.
struct MarkedPoint {
    ParamPolynomial A;
    ParamPolynomial B;
    std::string label;
};

// One fiber of a family: numeric coefficients plus a certified lower bound
// on |Res| used by escape-rate error estimates. p[k], q[k] follow the same
// X^k Y^(d-k) layout as HomogeneousForm.
struct FiberMap {
    int degree = 0;
    std::vector<std::complex<double>> p;
    std::vector<std::complex<double>> q;
    double res_abs = 0.0;

    std::pair<std::complex<double>, std::complex<double>> apply(std::complex<double> X,
                                                                std::complex<double> Y) const;
};

class MapFamily {
  public:
    MapFamily(HomogeneousForm P, HomogeneousForm Q, std::vector<MarkedPoint> marked,
              std::string label, ParamPolynomial resultant);

    const HomogeneousForm& numerator() const { return P_; }
    const HomogeneousForm& denominator() const { return Q_; }
    int degree() const { return P_.deg; }
    const std::vector<MarkedPoint>& marked() const { return marked_; }
    const std::string& label() const { return label_; }
    const ParamPolynomial& resultant() const { return resultant_; }

  private:
    HomogeneousForm P_, Q_;
    std::vector<MarkedPoint> marked_;
    std::string label_;
    ParamPolynomial resultant_;
};

// Validates shapes, requires degree >= 2, computes the Sylvester resultant
// and rejects families where it vanishes identically.
MapFamily make_family(HomogeneousForm P, HomogeneousForm Q, std::vector<MarkedPoint> marked,
                      std::string label);

const ParamPolynomial& resultant_locus(const MapFamily& fam);

// gcd-reduce the pair, strip common content, fix the representative so the
// leading coefficient of A (or of B when A = 0) points into the first
// quadrant. Two marked points are projectively equal iff their normal forms
// match coefficientwise.
MarkedPoint normalize_marked(MarkedPoint a);

// n-fold pushforward of the marked point under the family, with exact
// coefficient arithmetic. Throws ResourceLimitError when an iterate would
// exceed max_coefficients stored rationals.
MarkedPoint iterate_marked(const MapFamily& fam, const MarkedPoint& a, int n,
                           std::size_t max_coefficients = 10'000'000);

// Orbit a, f(a), ..., f^n(a) (n + 1 entries).
std::vector<MarkedPoint> marked_orbit(const MapFamily& fam, const MarkedPoint& a, int n);

// Wronskian P_X Q_Y - P_Y Q_X as a form of degree 2d - 2; its roots in
// (X : Y) are the fiberwise critical points.
HomogeneousForm critical_polynomial(const MapFamily& fam);

// Numeric fiber at parameter s. Throws DegenerateFiberError when |Res(s)| is
// at or below the tolerance. The default (degeneracy_tol < 0) is
// 1e-12 * scale^(2d) with scale = max(1, sup |fiber coefficient|), matching
// the degree-2d homogeneity of the resultant in the coefficients.
FiberMap specialize(const MapFamily& fam, std::complex<double> s, double degeneracy_tol = -1.0);

double chordal(std::complex<double> X1, std::complex<double> Y1, std::complex<double> X2,
               std::complex<double> Y2);

// |det| of the Sylvester matrix of two numeric degree-d forms.
std::complex<double> numeric_resultant(const std::vector<std::complex<double>>& p,
                                       const std::vector<std::complex<double>>& q, int d);

}  // namespace prepllab
