#include <prepllab/measures.hpp>

#include <prepllab/preperiodic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace prepllab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

DiscreteMeasure ddc_impl(const GridPotential& pot, bool parallel) {
    const int nx = pot.nx, ny = pot.ny;
    if (nx < 3 || ny < 3) throw MeasureError("laplacian stencil needs at least a 3x3 grid");
    const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    if (pot.values.size() != cells || pot.mask.size() != cells) {
        throw MeasureError("potential grid arrays do not match its resolution");
    }

    DiscreteMeasure mu;
    mu.rect = pot.rect;
    mu.nx = nx;
    mu.ny = ny;
    mu.interior_margin = 1;
    mu.masses.assign(cells, 0.0);
    mu.excluded.assign(cells, 1);

    double maxabs = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        if (!pot.mask[k]) maxabs = std::max(maxabs, std::abs(pot.values[k]));
    }
    mu.slack = 8.0 * pot.tol / kTwoPi + 1e-12 * maxabs;

    std::vector<double> raw(cells, 0.0);
    const auto& v = pot.values;
    const auto& msk = pot.mask;

#pragma omp parallel for collapse(2) schedule(static) if (parallel)
    for (int j = 1; j < ny - 1; ++j) {
        for (int i = 1; i < nx - 1; ++i) {
            const std::size_t idx =
                static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                static_cast<std::size_t>(i);
            const std::size_t e = idx + 1, w = idx - 1;
            const std::size_t n = idx + static_cast<std::size_t>(nx);
            const std::size_t s = idx - static_cast<std::size_t>(nx);
            if (msk[idx] || msk[e] || msk[w] || msk[n] || msk[s]) continue;
            mu.excluded[idx] = 0;
            const double lap = v[e] + v[w] + v[n] + v[s] - 4.0 * v[idx];
            raw[idx] = lap / kTwoPi;
            mu.masses[idx] = std::max(raw[idx], 0.0);
        }
    }

    double min_raw = std::numeric_limits<double>::infinity();
    double total = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        if (mu.excluded[k]) continue;
        min_raw = std::min(min_raw, raw[k]);
        total += mu.masses[k];
    }
    mu.min_raw = std::isfinite(min_raw) ? min_raw : 0.0;
    mu.total = total;
    return mu;
}

}  // namespace

DiscreteMeasure ddc(const GridPotential& pot) { return ddc_impl(pot, true); }

DiscreteMeasure ddc_serial(const GridPotential& pot) { return ddc_impl(pot, false); }

double total_mass(const DiscreteMeasure& mu) { return mu.total; }

DiscreteMeasure empirical_measure(const std::vector<std::complex<double>>& points, Rect rect,
                                  int nx, int ny) {
    if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0)) {
        throw MeasureError("rectangle is degenerate");
    }
    if (nx < 1 || ny < 1) throw MeasureError("resolution must be at least 1x1");

    DiscreteMeasure mu;
    mu.rect = rect;
    mu.nx = nx;
    mu.ny = ny;
    mu.interior_margin = 0;
    const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    mu.masses.assign(cells, 0.0);
    mu.excluded.assign(cells, 0);

    const double dx = rect.width() / nx, dy = rect.height() / ny;
    long inside = 0;
    for (const auto& p : points) {
        const double x = p.real(), y = p.imag();
        if (!(x >= rect.x0 && x < rect.x1 && y >= rect.y0 && y < rect.y1)) continue;
        int i = std::min(nx - 1, static_cast<int>(std::floor((x - rect.x0) / dx)));
        int j = std::min(ny - 1, static_cast<int>(std::floor((y - rect.y0) / dy)));
        mu.masses[static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                  static_cast<std::size_t>(i)] += 1.0;
        ++inside;
    }
    if (inside > 0) {
        for (auto& m : mu.masses) m /= static_cast<double>(inside);
        mu.total = 1.0;
    }
    return mu;
}

double box_discrepancy(const DiscreteMeasure& mu, const DiscreteMeasure& nu, int level) {
    if (mu.nx != nu.nx || mu.ny != nu.ny || mu.rect.x0 != nu.rect.x0 ||
        mu.rect.x1 != nu.rect.x1 || mu.rect.y0 != nu.rect.y0 || mu.rect.y1 != nu.rect.y1) {
        throw MeasureError("measures live on different grids");
    }
    if (level < 0) throw MeasureError("level must be nonnegative");
    const int boxes = 1 << level;
    if (mu.nx % boxes != 0 || mu.ny % boxes != 0) {
        throw MeasureError("2^level must divide the grid resolution");
    }

    const std::size_t cells = mu.masses.size();
    double tmu = 0.0, tnu = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        if (mu.excluded[k] || nu.excluded[k]) continue;
        tmu += mu.masses[k];
        tnu += nu.masses[k];
    }
    if (!(tmu > 0.0) || !(tnu > 0.0)) {
        throw MeasureError("box discrepancy needs both measures to carry mass");
    }

    const int bw = mu.nx / boxes, bh = mu.ny / boxes;
    double worst = 0.0;
    for (int bj = 0; bj < boxes; ++bj) {
        for (int bi = 0; bi < boxes; ++bi) {
            double smu = 0.0, snu = 0.0;
            for (int j = bj * bh; j < (bj + 1) * bh; ++j) {
                for (int i = bi * bw; i < (bi + 1) * bw; ++i) {
                    const std::size_t idx =
                        static_cast<std::size_t>(j) * static_cast<std::size_t>(mu.nx) +
                        static_cast<std::size_t>(i);
                    if (mu.excluded[idx] || nu.excluded[idx]) continue;
                    smu += mu.masses[idx];
                    snu += nu.masses[idx];
                }
            }
            worst = std::max(worst, std::abs(smu / tmu - snu / tnu));
        }
    }
    return worst;
}

RankResult phi_rank_marked(const MapFamily& fam, const MarkedPoint& a, Rect rect, int res,
                           double threshold, double tol) {
    RankResult r;
    r.threshold = threshold;
    if (is_persistently_preperiodic(fam, a).persistent) {
        r.rank = 0;
        r.certified = true;
        r.status = RankStatus::PersistentCertified;
        return r;
    }

    GridPotential pot = marked_potential_grid(fam, a, rect, res, res, tol);
    DiscreteMeasure mu = ddc(pot);
    std::size_t included = 0;
    for (auto e : mu.excluded) included += (e == 0);
    const double noise = static_cast<double>(included) * mu.slack;
    if (!(threshold > noise)) {
        throw MeasureError("threshold does not clear the grid's discretization noise");
    }

    r.mass = mu.total;
    if (mu.total > threshold) {
        r.rank = 1;
        r.certified = true;
        r.status = RankStatus::MassAboveThreshold;
    } else {
        r.rank = 0;
        r.certified = false;
        r.status = RankStatus::InconclusiveZero;
    }
    return r;
}

}  // namespace prepllab
