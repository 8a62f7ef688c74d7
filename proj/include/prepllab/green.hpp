#pragma once

#include <prepllab/family.hpp>

#include <complex>
#include <cstdint>
#include <vector>

namespace prepllab {

class NonConvergenceError : public FamilyError {
  public:
    explicit NonConvergenceError(const std::string& what) : FamilyError(what) {}
};

// Escape-rate value with a certified enclosure: the true value lies in
// [value - error, value + error], and error <= the requested tolerance.
struct GreenValue {
    double value = 0.0;
    double error = 0.0;
    int iterations = 0;
};

// Axis-aligned rectangle in the parameter plane.
struct Rect {
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
};

// Sampled parameter potential on cell centers. values and mask are row-major
// (index j * nx + i); masked cells hold NaN and carry no certificate.
struct GridPotential {
    Rect rect;
    int nx = 0, ny = 0;
    std::vector<double> values;
    std::vector<std::uint8_t> mask;
    double error = 0.0;  // max certified per-cell error over unmasked cells
    double tol = 0.0;
    // Set when the marked point was recognized as persistently preperiodic
    // (pinned at a finite forward-repeating configuration with B = 0); the
    // potential is then identically zero with no numeric iteration.
    bool persistent_shortcut = false;

    double dx() const { return rect.width() / nx; }
    double dy() const { return rect.height() / ny; }
    std::complex<double> center(int i, int j) const {
        return {rect.x0 + (i + 0.5) * dx(), rect.y0 + (j + 0.5) * dy()};
    }
};

// Certified bound C on sup over the unit sup-norm sphere of
// |log(||F(Z)|| / ||Z||^d)|, from coefficient norms (upper side) and the
// resultant with a Hadamard cofactor bound (lower side). +inf when the fiber
// carries no usable lower bound.
double escape_bound_constant(const FiberMap& f);

// Escape rate of the homogeneous lift (X, Y) with per-iterate sup-norm
// rescaling. Stops once the certified truncation bound C d^-n / (d-1) plus a
// floating-point slack drops to tol; throws NonConvergenceError when that
// would take more than max_iterations steps.
GreenValue green_value(const FiberMap& f, std::complex<double> X, std::complex<double> Y,
                       double tol, int max_iterations = 10000);

// Parameter potential g(s) = G_{f_s}(A(s), B(s)) on cell centers. Cells whose
// fiber is degenerate or fails to converge are masked, never fatal.
GridPotential marked_potential_grid(const MapFamily& fam, const MarkedPoint& a, Rect rect, int nx,
                                    int ny, double tol);

// Single-threaded reference with identical output, kept for equivalence tests
// and benchmarks.
GridPotential marked_potential_grid_serial(const MapFamily& fam, const MarkedPoint& a, Rect rect,
                                           int nx, int ny, double tol);

// One factor of a fiber-product potential: the marked potential of `fam` at
// parameter s + shift.
struct ProductEntry {
    MapFamily fam;
    MarkedPoint a;
    GaussianRational shift;
};

// Pointwise max over entries of the shifted marked potentials; the potential
// of the product family's marked point. A cell is masked when any entry
// fails there.
GridPotential product_potential_grid(const std::vector<ProductEntry>& entries, Rect rect, int nx,
                                     int ny, double tol);

}  // namespace prepllab
