#include <prepllab/preperiodic.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace prepllab {

namespace {

using cplx = std::complex<double>;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

// True when the denominator form is q0 * Y^d for a nonzero constant q0.
bool constant_denominator(const HomogeneousForm& den, GaussianRational& q0) {
    if (!den.c[0].is_constant() || den.c[0].is_zero()) return false;
    for (size_t k = 1; k < den.c.size(); ++k)
        if (!den.c[k].is_zero()) return false;
    q0 = den.c[0].coeff(0);
    return true;
}

std::optional<OrbitEvaluation> orbit_context(const MapFamily& fam, const MarkedPoint& a) {
    GaussianRational q0;
    if (!constant_denominator(fam.denominator(), q0)) return std::nullopt;
    if (!a.B.is_constant() || a.B.is_zero()) return std::nullopt;
    OrbitEvaluation ctx;
    ctx.degree = fam.degree();
    ctx.numerator = fam.numerator().c;
    ctx.q0 = q0;
    ctx.a_num = a.A;
    ctx.a_den = a.B.coeff(0);
    return ctx;
}

// ---- numeric evaluation for the root iteration ----------------------------

// Newton ratio p/p' of the equation polynomial with its origin roots divided
// out. Two paths: plain Horner on the stripped coefficients, or the orbit
// recursion (exact up to roundoff along the orbit, immune to the coefficient
// cancellation of deep equations) with the origin factor removed through the
// logarithmic derivative.
struct RatioEvaluator {
    std::vector<cplx> coeffs;  // stripped cofactor, coefficient path

    bool use_orbit = false;
    int d = 0, m = 0, n = 0;
    int origin_zeros = 0;
    double escape = 0.0;
    std::vector<std::vector<cplx>> cj, cjd;  // fiber coefficient polys and s-derivatives
    std::vector<cplx> a_num, a_numd;
    cplx q0 = 1.0, a_den = 1.0;

    cplx ratio(cplx z) const { return use_orbit ? orbit_ratio(z) : coeff_ratio(z); }

    cplx coeff_ratio(cplx z) const {
        cplx p = coeffs.back(), dp = 0.0;
        for (size_t k = coeffs.size() - 1; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + coeffs[k];
        }
        if (p == 0.0) return 0.0;
        if (dp == 0.0 || !finite(dp)) return 1e-8 * (1.0 + std::abs(z));
        return p / dp;
    }

    cplx orbit_ratio(cplx z) const {
        std::vector<cplx> c(size_t(d) + 1), cd(size_t(d) + 1);
        for (int j = 0; j <= d; ++j) {
            c[j] = horner(cj[j], z);
            cd[j] = horner(cjd[j], z);
        }
        cplx t = horner(a_num, z) / a_den;
        cplx tp = horner(a_numd, z) / a_den;
        cplx tm = t, tpm = tp;
        bool escaped = false;
        cplx lambda = 0.0;
        for (int k = 1; k <= m + n; ++k) {
            if (!escaped) {
                cplx p = c[size_t(d)], pt = 0.0, ps = cd[size_t(d)];
                for (int j = d; j-- > 0;) {
                    pt = pt * t + p;
                    p = p * t + c[j];
                    ps = ps * t + cd[j];
                }
                t = p / q0;
                tp = (ps + pt * tp) / q0;
                if (!(std::abs(t) <= escape)) {
                    escaped = true;
                    lambda = tp / t;
                    if (!finite(lambda)) lambda = 1.0;
                }
            } else {
                // only the top-degree term matters once |t| is astronomical
                lambda = cd[size_t(d)] / c[size_t(d)] + double(d) * lambda;
            }
            if (k == m) {
                tm = t;
                tpm = tp;
            }
        }
        cplx w;
        if (!escaped) {
            cplx den = tp - tpm;
            if (t - tm == 0.0) return 0.0;
            if (den == 0.0 || !finite(den)) return 1e-8 * (1.0 + std::abs(z));
            w = (t - tm) / den;
        } else {
            if (lambda == 0.0 || !finite(lambda)) return 1e-8 * (1.0 + std::abs(z));
            w = 1.0 / lambda;
        }
        if (origin_zeros > 0) {
            // cofactor q = p / z^k:  q'/q = p'/p - k/z
            if (w == 0.0) return 0.0;
            cplx den = 1.0 - w * (double(origin_zeros) / z);
            if (den == 0.0 || !finite(den)) return 1e-8 * (1.0 + std::abs(z));
            w = w / den;
        }
        return finite(w) ? w : cplx(1e-8 * (1.0 + std::abs(z)));
    }
};

// log2 of |c| within a couple of bits, safe for coefficients far beyond
// double range.
double log2_magnitude(const GaussianRational& c) {
    auto part = [](const mpq_class& q) -> double {
        if (q == 0) return -std::numeric_limits<double>::infinity();
        double nb = double(mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
        double db = double(mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
        return nb - db;
    };
    double r = std::max(part(c.re()), part(c.im()));
    return r + 1.0;
}

// Initial approximations on the Newton-polygon shells of the centered
// polynomial: a segment of the upper convex hull of (k, log2|c_k|) from
// (a, ua) to (b, ub) predicts b - a roots of modulus about 2^((ua-ub)/(b-a)).
// Starting each point on its own shell keeps the iteration from crawling in
// from one oversized circle, which stalls for high degrees.
std::vector<cplx> newton_polygon_points(const std::vector<GaussianRational>& c, cplx center) {
    int deg = int(c.size()) - 1;
    std::vector<cplx> pts;
    pts.reserve(size_t(deg));

    std::vector<int> ks;
    std::vector<double> us;
    for (int k = 0; k <= deg; ++k) {
        if (c[size_t(k)].is_zero()) continue;
        ks.push_back(k);
        us.push_back(log2_magnitude(c[size_t(k)]));
    }
    // exact roots at the center itself: park those points right next to it
    for (int t = 0; t < ks.front(); ++t) {
        double theta = 2.0 * M_PI * (double(t) + 0.5) / double(ks.front()) + 0.37;
        pts.push_back(center + 1e-12 * (1.0 + std::abs(center)) *
                                   cplx(std::cos(theta), std::sin(theta)));
    }

    std::vector<size_t> hull;
    for (size_t i = 0; i < ks.size(); ++i) {
        while (hull.size() >= 2) {
            size_t p1 = hull[hull.size() - 2], p2 = hull[hull.size() - 1];
            double cross = (double(ks[p2]) - double(ks[p1])) * (us[i] - us[p1]) -
                           (us[p2] - us[p1]) * (double(ks[i]) - double(ks[p1]));
            if (cross >= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(i);
    }
    for (size_t hseg = 0; hseg + 1 < hull.size(); ++hseg) {
        size_t a = hull[hseg], b = hull[hseg + 1];
        int count = ks[b] - ks[a];
        double slope = (us[a] - us[b]) / double(count);
        double radius = std::pow(2.0, std::max(std::min(slope, 500.0), -500.0));
        for (int t = 0; t < count; ++t) {
            double theta =
                2.0 * M_PI * (double(t) + 0.5) / double(count) + 0.37 + 0.61 * double(ks[a]);
            pts.push_back(center + radius * cplx(std::cos(theta), std::sin(theta)));
        }
    }
    return pts;
}

struct ExactEval {
    GaussianRational p, dp, ddp_half;
};

ExactEval eval_with_derivatives(const std::vector<GaussianRational>& c,
                                const GaussianRational& z) {
    ExactEval e;
    for (size_t k = c.size(); k-- > 0;) {
        e.ddp_half = e.ddp_half * z + e.dp;
        e.dp = e.dp * z + e.p;
        e.p = e.p * z + c[k];
    }
    return e;
}

CertifiedRoot certify(const std::vector<GaussianRational>& coeffs, cplx value) {
    CertifiedRoot root;
    root.value = value;
    GaussianRational z(mpq_class(value.real()), mpq_class(value.imag()));
    ExactEval e = eval_with_derivatives(coeffs, z);
    mpq_class np = e.p.norm2();
    if (np == 0) {
        root.residual = 0.0;
    } else {
        double approx = std::sqrt(std::max(np.get_d(), 0.0));
        root.residual = std::max(approx * (1.0 + 1e-9), 1e-150);
    }
    // Newton contraction |p| |p''| / |p'|^2 < 1/4, squared to stay rational:
    // 64 N(p) N(p''/2) < N(p')^2.
    mpq_class lhs = 64 * np * e.ddp_half.norm2();
    mpq_class rhs = e.dp.norm2();
    rhs = rhs * rhs;
    root.flag = (np == 0 && e.dp.norm2() != 0) || lhs < rhs ? RootFlag::Simple
                                                            : RootFlag::Cluster;
    return root;
}

bool value_less(cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// Constant-coefficient check for dynamical-variable equations.
void require_constant_map(const MapFamily& f, const char* who) {
    for (const auto& c : f.numerator().c)
        if (!c.is_constant()) throw FamilyError(std::string(who) + ": map coefficients must be constant");
    for (const auto& c : f.denominator().c)
        if (!c.is_constant()) throw FamilyError(std::string(who) + ": map coefficients must be constant");
}

MarkedPoint identity_section() {
    return MarkedPoint{ParamPolynomial::variable(),
                       ParamPolynomial::constant(GaussianRational(1)), "identity"};
}

}  // namespace

PrepEquation prep_equation(const MapFamily& fam, const MarkedPoint& a, int m, int n,
                           bool deflate, std::size_t max_coefficients) {
    if (m < 0 || n < 1) throw std::invalid_argument("prep_equation: need m >= 0, n >= 1");

    std::vector<MarkedPoint> orbit;
    orbit.push_back(normalize_marked(a));
    for (int k = 1; k <= m + n; ++k)
        orbit.push_back(iterate_marked(fam, orbit.back(), 1, max_coefficients));

    PrepEquation eq;
    eq.m = m;
    eq.n = n;
    ParamPolynomial cross =
        orbit[size_t(m) + size_t(n)].A * orbit[size_t(m)].B - orbit[size_t(m)].A * orbit[size_t(m) + size_t(n)].B;
    eq.poly = content_normalize(cross).first;
    if (eq.persistent()) return eq;

    if (deflate) {
        ParamPolynomial q = eq.poly;
        for (int mp = 0; mp <= m; ++mp) {
            for (int np = 1; np <= n; ++np) {
                if (n % np != 0 || (mp == m && np == n)) continue;
                PrepEquation lower = prep_equation(fam, a, mp, np, false, max_coefficients);
                if (lower.persistent()) continue;
                ParamPolynomial g = poly_gcd(q, lower.poly);
                if (g.degree() >= 1) q = exact_divide(q, g);
            }
        }
        eq.poly = content_normalize(q).first;
        eq.deflated = true;
        return eq;
    }

    eq.orbit = orbit_context(fam, orbit[0]);
    return eq;
}

PersistenceStatus is_persistently_preperiodic(const MapFamily& fam, const MarkedPoint& a,
                                              int bound, std::size_t max_coefficients) {
    if (bound < 1) throw std::invalid_argument("is_persistently_preperiodic: need bound >= 1");
    std::vector<MarkedPoint> seen;
    seen.push_back(normalize_marked(a));
    try {
        for (int k = 1; k <= bound; ++k) {
            MarkedPoint next = iterate_marked(fam, seen.back(), 1, max_coefficients);
            for (size_t j = 0; j < seen.size(); ++j) {
                if (seen[j].A == next.A && seen[j].B == next.B)
                    return PersistenceStatus{true, int(j), k - int(j)};
            }
            seen.push_back(std::move(next));
        }
    } catch (const ResourceLimitError&) {
        // iterates outgrew the budget; certainly not a finite exact orbit
    }
    return PersistenceStatus{false, 0, 0};
}

SolveResult solve_parameters(const PrepEquation& eq, double precision, int max_iterations) {
    if (eq.persistent())
        throw std::invalid_argument("solve_parameters: the relation holds identically");
    if (precision <= 0 || max_iterations < 1)
        throw std::invalid_argument("solve_parameters: bad iteration controls");

    SolveResult result;
    const std::vector<GaussianRational>& full = eq.poly.coeffs();
    int deg = eq.poly.degree();
    if (deg == 0) return result;

    int origin_zeros = 0;
    while (origin_zeros < deg && full[size_t(origin_zeros)].is_zero()) ++origin_zeros;
    std::vector<GaussianRational> cofactor(full.begin() + origin_zeros, full.end());
    int cdeg = deg - origin_zeros;

    std::vector<cplx> z(static_cast<size_t>(cdeg));
    std::vector<char> frozen(static_cast<size_t>(cdeg), 0);
    std::vector<double> last_step(static_cast<size_t>(cdeg),
                                  std::numeric_limits<double>::infinity());

    if (cdeg > 0) {
        RatioEvaluator ev;
        if (eq.orbit) {
            const OrbitEvaluation& ctx = *eq.orbit;
            ev.use_orbit = true;
            ev.d = ctx.degree;
            ev.m = eq.m;
            ev.n = eq.n;
            ev.origin_zeros = origin_zeros;
            ev.escape = std::pow(10.0, 280.0 / double(ctx.degree));
            for (const auto& p : ctx.numerator) {
                ev.cj.push_back(p.to_complex_coeffs());
                ev.cjd.push_back(p.derivative().to_complex_coeffs());
            }
            ev.a_num = ctx.a_num.to_complex_coeffs();
            ev.a_numd = ctx.a_num.derivative().to_complex_coeffs();
            ev.q0 = ctx.q0.to_complex();
            ev.a_den = ctx.a_den.to_complex();
        } else {
            ParamPolynomial stripped(cofactor);
            ev.coeffs = stripped.to_complex_coeffs();
        }

        // deterministic start: circle around the root centroid
        cplx centroid = 0.0;
        if (cdeg >= 1) {
            GaussianRational mean =
                cofactor[size_t(cdeg) - 1] / (cofactor[size_t(cdeg)] * GaussianRational(long(cdeg)));
            centroid = -mean.to_complex();
            if (!finite(centroid)) centroid = 0.0;
        }
        double radius = root_radius(cofactor) + std::abs(centroid);
        for (int i = 0; i < cdeg; ++i) {
            double theta = 2.0 * M_PI * (double(i) + 0.5) / double(cdeg) + 0.37;
            z[size_t(i)] = centroid + radius * cplx(std::cos(theta), std::sin(theta));
        }

        for (int sweep = 0; sweep < max_iterations; ++sweep) {
            bool all_frozen = true;
            for (int i = 0; i < cdeg; ++i) {
                if (frozen[size_t(i)]) continue;
                all_frozen = false;
                if (!finite(z[size_t(i)])) {
                    double theta =
                        2.0 * M_PI * (double(i) + 0.5) / double(cdeg) + 0.37 + 0.01 * double(sweep);
                    z[size_t(i)] = centroid + radius * cplx(std::cos(theta), std::sin(theta));
                }
                cplx w = ev.ratio(z[size_t(i)]);
                cplx repel = 0.0;
                for (int j = 0; j < cdeg; ++j) {
                    if (j == i) continue;
                    cplx diff = z[size_t(i)] - z[size_t(j)];
                    if (diff == 0.0) diff = 1e-12 * (1.0 + std::abs(z[size_t(i)])) * cplx(0.7, 0.7);
                    repel += 1.0 / diff;
                }
                cplx denom = 1.0 - w * repel;
                cplx corr = (denom == 0.0 || !finite(denom)) ? w : w / denom;
                if (!finite(corr)) corr = 0.0;
                z[size_t(i)] -= corr;
                last_step[size_t(i)] = std::abs(corr);
                if (last_step[size_t(i)] <= precision * (1.0 + std::abs(z[size_t(i)])))
                    frozen[size_t(i)] = 1;
            }
            if (all_frozen) break;
        }

        // Newton polish: a few extra contractions help the frozen points that
        // stopped while their neighbors were still moving.
        for (int i = 0; i < cdeg; ++i) {
            for (int step = 0; step < 3; ++step) {
                cplx w = ev.ratio(z[size_t(i)]);
                if (!finite(w) || std::abs(w) > 1e-4 * (1.0 + std::abs(z[size_t(i)]))) break;
                z[size_t(i)] -= w;
            }
        }

        for (int i = 0; i < cdeg; ++i) {
            if (frozen[size_t(i)]) continue;
            if (last_step[size_t(i)] <= 1e-6 * (1.0 + std::abs(z[size_t(i)]))) continue;  // stalled cluster
            ++result.unconverged;
        }
        result.complete = result.unconverged == 0;
    }

    std::vector<cplx> values(size_t(origin_zeros), cplx(0.0, 0.0));
    values.insert(values.end(), z.begin(), z.end());
    std::sort(values.begin(), values.end(), value_less);

    result.roots.resize(values.size());
#pragma omp parallel for schedule(static)
    for (int i = 0; i < int(values.size()); ++i) {
        result.roots[size_t(i)] = certify(full, values[size_t(i)]);
    }

    for (size_t i = 0; i < result.roots.size(); ++i) {
        double sep = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < result.roots.size(); ++j)
            if (j != i) sep = std::min(sep, std::abs(values[i] - values[j]));
        result.roots[i].separation = sep;
    }
    return result;
}

PrepEquation preperiodic_points_map(const MapFamily& f, int m, int n, bool deflate,
                                    std::size_t max_coefficients) {
    require_constant_map(f, "preperiodic_points_map");
    return prep_equation(f, identity_section(), m, n, deflate, max_coefficients);
}

std::vector<std::complex<double>> dedup_points(std::vector<std::complex<double>> pts,
                                               double tol) {
    std::vector<cplx> out;
    for (cplx p : pts) {
        bool fresh = true;
        for (cplx q : out) {
            if (std::abs(p - q) <= tol) {
                fresh = false;
                break;
            }
        }
        if (fresh) out.push_back(p);
    }
    return out;
}

CommonPrepResult common_preperiodic(const MapFamily& f, const MapFamily& g, int depth,
                                    bool exact, double match_tol) {
    if (depth < 1) throw std::invalid_argument("common_preperiodic: need depth >= 1");
    require_constant_map(f, "common_preperiodic");
    require_constant_map(g, "common_preperiodic");

    struct Tagged {
        int total;
        PrepEquation eq;
    };
    auto equations = [depth](const MapFamily& map) {
        std::vector<Tagged> eqs;
        for (int m = 0; m + 1 <= depth; ++m)
            for (int n = 1; m + n <= depth; ++n) {
                PrepEquation eq = prep_equation(map, identity_section(), m, n);
                if (!eq.persistent()) eqs.push_back(Tagged{m + n, std::move(eq)});
            }
        return eqs;
    };
    std::vector<Tagged> fe = equations(f);
    std::vector<Tagged> ge = equations(g);

    struct Candidate {
        cplx point;
        int depth;
    };
    std::vector<Candidate> candidates;
    bool ambiguous = false;

    if (exact) {
        for (const auto& ef : fe) {
            for (const auto& eg : ge) {
                ParamPolynomial common = poly_gcd(ef.eq.poly, eg.eq.poly);
                if (common.degree() < 1) continue;
                PrepEquation stub;
                stub.poly = common;
                stub.m = ef.eq.m;
                stub.n = ef.eq.n;
                SolveResult r = solve_parameters(stub);
                for (const auto& root : r.roots)
                    candidates.push_back(Candidate{root.value, std::max(ef.total, eg.total)});
            }
        }
    } else {
        std::map<std::pair<int, int>, std::vector<cplx>> froots, groots;
        auto roots_of = [](const Tagged& t, std::map<std::pair<int, int>, std::vector<cplx>>& cache) {
            auto key = std::make_pair(t.eq.m, t.eq.n);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            std::vector<cplx> vals;
            for (const auto& root : solve_parameters(t.eq).roots) vals.push_back(root.value);
            cache.emplace(key, vals);
            return vals;
        };
        for (const auto& ef : fe) {
            std::vector<cplx> fa = roots_of(ef, froots);
            for (const auto& eg : ge) {
                std::vector<cplx> gb = roots_of(eg, groots);
                for (size_t ia = 0; ia < fa.size(); ++ia) {
                    size_t best = gb.size();
                    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
                    for (size_t ib = 0; ib < gb.size(); ++ib) {
                        double d = std::abs(fa[ia] - gb[ib]);
                        if (d < d1) {
                            d2 = d1;
                            d1 = d;
                            best = ib;
                        } else if (d < d2) {
                            d2 = d;
                        }
                    }
                    if (best == gb.size() || d1 > match_tol) continue;
                    if (d2 <= match_tol) ambiguous = true;
                    // mutual nearest: fa[ia] must also be the closest f-root to gb[best]
                    bool mutual = true;
                    double dback2 = std::numeric_limits<double>::infinity();
                    for (size_t ja = 0; ja < fa.size(); ++ja) {
                        if (ja == ia) continue;
                        double d = std::abs(fa[ja] - gb[best]);
                        if (d < d1) mutual = false;
                        dback2 = std::min(dback2, d);
                    }
                    if (dback2 <= match_tol) ambiguous = true;
                    if (!mutual) continue;
                    candidates.push_back(
                        Candidate{0.5 * (fa[ia] + gb[best]), std::max(ef.total, eg.total)});
                }
            }
        }
    }

    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.depth < b.depth; });
    double dedup_tol = exact ? 1e-9 : match_tol;

    CommonPrepResult result;
    result.exact_mode = exact;
    result.ambiguous = ambiguous;
    result.counts.assign(size_t(depth), 0);
    std::vector<cplx> accepted;
    size_t next = 0;
    for (int d = 1; d <= depth; ++d) {
        while (next < candidates.size() && candidates[next].depth <= d) {
            bool fresh = true;
            for (cplx q : accepted) {
                if (std::abs(candidates[next].point - q) <= dedup_tol) {
                    fresh = false;
                    break;
                }
            }
            if (fresh) accepted.push_back(candidates[next].point);
            ++next;
        }
        result.counts[size_t(d) - 1] = int(accepted.size());
    }
    std::sort(accepted.begin(), accepted.end(), value_less);
    result.points = std::move(accepted);
    return result;
}

}  // namespace prepllab
