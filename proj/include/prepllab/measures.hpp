#pragma once

#include <prepllab/green.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace prepllab {

class MeasureError : public std::runtime_error {
  public:
    explicit MeasureError(const std::string& what) : std::runtime_error(what) {}
};

// Cell masses on the same grid layout as GridPotential. Cells in the boundary
// ring, masked cells, and cells whose stencil touches a masked cell are
// excluded (mass 0, flag set). Masses are clamped at 0; min_raw keeps the
// most negative pre-clamp value for diagnostics.
struct DiscreteMeasure {
    Rect rect;
    int nx = 0, ny = 0;
    std::vector<double> masses;
    std::vector<std::uint8_t> excluded;
    double total = 0.0;
    int interior_margin = 0;
    double slack = 0.0;  // per-cell discretization noise bound
    double min_raw = 0.0;
};

// (1/2pi) times the 5-point discrete Laplacian of the potential, cellwise.
DiscreteMeasure ddc(const GridPotential& pot);

// Single-threaded reference with identical output.
DiscreteMeasure ddc_serial(const GridPotential& pot);

double total_mass(const DiscreteMeasure& mu);

// Counting measure of the points falling inside rect, normalized to total 1
// when at least one point lands inside (total 0 otherwise).
DiscreteMeasure empirical_measure(const std::vector<std::complex<double>>& points, Rect rect,
                                  int nx, int ny);

// Max over the 4^level dyadic sub-rectangles of the difference of normalized
// masses. Cells excluded by either measure are dropped from both before
// normalizing, so measures with different margins compare on a common domain.
double box_discrepancy(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int level);

enum class RankStatus {
    PersistentCertified,  // symbolic orbit repeat: rank 0, certified
    MassAboveThreshold,   // dd^c mass exceeds the threshold: rank 1
    InconclusiveZero,     // no mass found at this resolution; not a certificate
};

struct RankResult {
    int rank = 0;
    bool certified = false;
    RankStatus status = RankStatus::InconclusiveZero;
    double mass = 0.0;
    double threshold = 0.0;
};

// Instability rank of a marked point over the window: 0 (certified) via the
// symbolic persistence detector, 1 when the measure's total mass clears the
// threshold, else an uncertified 0. The threshold must exceed the accumulated
// discretization noise of the grid.
RankResult phi_rank_marked(const MapFamily& fam, const MarkedPoint& a, Rect rect, int res,
                           double threshold, double tol = 1e-8);

}  // namespace prepllab
