#include <prepllab/green.hpp>

#include <prepllab/preperiodic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace prepllab {

namespace {

void check_grid_request(Rect rect, int nx, int ny, double tol) {
    if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0)) {
        throw FamilyError("grid rectangle is degenerate");
    }
    if (nx < 1 || ny < 1) throw FamilyError("grid resolution must be at least 1x1");
    if (!(tol > 0.0)) throw FamilyError("tolerance must be positive");
}

// A marked point pinned at B = 0 whose short forward orbit exactly repeats is
// persistently preperiodic; its potential vanishes identically.
bool pinned_persistent(const MapFamily& fam, const MarkedPoint& a) {
    return a.B.is_zero() && is_persistently_preperiodic(fam, a, 8, 100000).persistent;
}

GridPotential fill_marked_grid(const MapFamily& fam, const MarkedPoint& a0, Rect rect, int nx,
                               int ny, double tol, bool parallel) {
    check_grid_request(rect, nx, ny, tol);
    GridPotential g;
    g.rect = rect;
    g.nx = nx;
    g.ny = ny;
    g.tol = tol;

    MarkedPoint a = normalize_marked(a0);
    const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    if (pinned_persistent(fam, a)) {
        g.persistent_shortcut = true;
        g.values.assign(cells, 0.0);
        g.mask.assign(cells, 0);
        g.error = 0.0;
        return g;
    }

    g.values.assign(cells, std::numeric_limits<double>::quiet_NaN());
    g.mask.assign(cells, 0);
    std::vector<double> errs(cells, 0.0);

#pragma omp parallel for collapse(2) schedule(static) if (parallel)
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t idx =
                static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                static_cast<std::size_t>(i);
            const std::complex<double> s = g.center(i, j);
            try {
                FiberMap f = specialize(fam, s);
                GreenValue gv = green_value(f, a.A.eval(s), a.B.eval(s), tol);
                g.values[idx] = gv.value;
                errs[idx] = gv.error;
            } catch (const FamilyError&) {
                g.mask[idx] = 1;
            }
        }
    }

    double worst = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        if (!g.mask[k]) worst = std::max(worst, errs[k]);
    }
    g.error = worst;
    return g;
}

}  // namespace

double escape_bound_constant(const FiberMap& f) {
    const int d = f.degree;
    double sum_p = 0.0, sum_q = 0.0, sq_p = 0.0, sq_q = 0.0;
    for (const auto& c : f.p) {
        sum_p += std::abs(c);
        sq_p += std::norm(c);
    }
    for (const auto& c : f.q) {
        sum_q += std::abs(c);
        sq_q += std::norm(c);
    }
    const double up = std::max(sum_p, sum_q);
    const double p2 = std::sqrt(sq_p), q2 = std::sqrt(sq_q);
    if (up == 0.0 || p2 == 0.0 || q2 == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    // Cofactors of the Sylvester matrix are Hadamard-bounded by row norms, so
    // ||F(Z)|| >= |Res| / (2d * B) on the unit sup-sphere with B below.
    const double B = std::pow(p2 * q2, d) / std::min(p2, q2);
    const double c_res = f.res_abs / (2.0 * d * B);
    return std::max(std::log(up), -std::log(c_res));
}

GreenValue green_value(const FiberMap& f, std::complex<double> X, std::complex<double> Y,
                       double tol, int max_iterations) {
    if (f.degree < 2 || f.p.size() != static_cast<std::size_t>(f.degree) + 1 ||
        f.q.size() != static_cast<std::size_t>(f.degree) + 1) {
        throw FamilyError("malformed fiber map");
    }
    if (!(tol > 0.0)) throw FamilyError("tolerance must be positive");

    const double C = escape_bound_constant(f);
    if (!std::isfinite(C)) {
        throw NonConvergenceError("no usable escape bound: resultant too small for this fiber");
    }

    const double norm0 = std::max(std::abs(X), std::abs(Y));
    if (!(norm0 > 0.0) || !std::isfinite(norm0)) {
        throw FamilyError("lift must be finite and nonzero");
    }
    X /= norm0;
    Y /= norm0;

    const double d = f.degree;
    double value = std::log(norm0);
    double err = C / (d - 1.0);
    double w = 1.0;
    int n = 0;
    auto fp_slack = [&] { return static_cast<double>(n) * 64e-16 * (1.0 + std::abs(value)); };

    while (err + fp_slack() > tol) {
        if (n >= max_iterations) {
            std::ostringstream msg;
            msg << "escape rate not certified to " << tol << " within " << max_iterations
                << " iterations (bound " << err << ")";
            throw NonConvergenceError(msg.str());
        }
        auto [fx, fy] = f.apply(X, Y);
        const double nrm = std::max(std::abs(fx), std::abs(fy));
        if (!(nrm > 0.0) || !std::isfinite(nrm)) {
            throw NonConvergenceError("orbit left the representable range");
        }
        w /= d;
        value += w * std::log(nrm);
        X = fx / nrm;
        Y = fy / nrm;
        err /= d;
        ++n;
    }
    return {value, err + fp_slack(), n};
}

GridPotential marked_potential_grid(const MapFamily& fam, const MarkedPoint& a, Rect rect, int nx,
                                    int ny, double tol) {
    return fill_marked_grid(fam, a, rect, nx, ny, tol, true);
}

GridPotential marked_potential_grid_serial(const MapFamily& fam, const MarkedPoint& a, Rect rect,
                                           int nx, int ny, double tol) {
    return fill_marked_grid(fam, a, rect, nx, ny, tol, false);
}

GridPotential product_potential_grid(const std::vector<ProductEntry>& entries, Rect rect, int nx,
                                     int ny, double tol) {
    if (entries.empty()) throw FamilyError("product potential needs at least one entry");
    check_grid_request(rect, nx, ny, tol);

    struct Prepared {
        const MapFamily* fam;
        MarkedPoint a;
        std::complex<double> shift;
    };
    std::vector<Prepared> prep;
    prep.reserve(entries.size());
    for (const auto& e : entries) {
        prep.push_back({&e.fam, normalize_marked(e.a), e.shift.to_complex()});
    }

    GridPotential g;
    g.rect = rect;
    g.nx = nx;
    g.ny = ny;
    g.tol = tol;
    const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    g.values.assign(cells, std::numeric_limits<double>::quiet_NaN());
    g.mask.assign(cells, 0);
    std::vector<double> errs(cells, 0.0);

#pragma omp parallel for collapse(2) schedule(static)
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t idx =
                static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
                static_cast<std::size_t>(i);
            const std::complex<double> s = g.center(i, j);
            double best = -std::numeric_limits<double>::infinity();
            double worst_err = 0.0;
            bool failed = false;
            for (const auto& e : prep) {
                const std::complex<double> se = s + e.shift;
                try {
                    FiberMap f = specialize(*e.fam, se);
                    GreenValue gv = green_value(f, e.a.A.eval(se), e.a.B.eval(se), tol);
                    best = std::max(best, gv.value);
                    worst_err = std::max(worst_err, gv.error);
                } catch (const FamilyError&) {
                    failed = true;
                    break;
                }
            }
            if (failed) {
                g.mask[idx] = 1;
            } else {
                g.values[idx] = best;
                errs[idx] = worst_err;
            }
        }
    }

    double worst = 0.0;
    for (std::size_t k = 0; k < cells; ++k) {
        if (!g.mask[k]) worst = std::max(worst, errs[k]);
    }
    g.error = worst;
    return g;
}

}  // namespace prepllab
