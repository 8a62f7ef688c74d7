#include <prepllab/family.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prepllab {

namespace {

void check_form(const HomogeneousForm& F, const char* which) {
    if (F.deg < 0 || F.c.size() != static_cast<std::size_t>(F.deg) + 1) {
        std::ostringstream msg;
        msg << which << " form of degree " << F.deg << " carries " << F.c.size()
            << " coefficients, expected " << F.deg + 1;
        throw FamilyError(msg.str());
    }
}

std::vector<std::vector<ParamPolynomial>> sylvester(const HomogeneousForm& P,
                                                    const HomogeneousForm& Q) {
    const int d = P.deg;
    const std::size_t n = 2 * static_cast<std::size_t>(d);
    std::vector<std::vector<ParamPolynomial>> S(n, std::vector<ParamPolynomial>(n));
    for (int i = 0; i < d; ++i) {
        for (int t = 0; t <= d; ++t) {
            S[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + t)] =
                P.c[static_cast<std::size_t>(d - t)];
            S[static_cast<std::size_t>(d + i)][static_cast<std::size_t>(i + t)] =
                Q.c[static_cast<std::size_t>(d - t)];
        }
    }
    return S;
}

long coefficient_degree(const HomogeneousForm& F) {
    long deg = 0;
    for (const auto& c : F.c) deg = std::max(deg, static_cast<long>(c.degree()));
    return deg;
}

ParamPolynomial scale_poly(const ParamPolynomial& p, const GaussianRational& c) {
    return p * ParamPolynomial::constant(c);
}

}  // namespace

MapFamily::MapFamily(HomogeneousForm P, HomogeneousForm Q, std::vector<MarkedPoint> marked,
                     std::string label, ParamPolynomial resultant)
    : P_(std::move(P)),
      Q_(std::move(Q)),
      marked_(std::move(marked)),
      label_(std::move(label)),
      resultant_(std::move(resultant)) {}

MapFamily make_family(HomogeneousForm P, HomogeneousForm Q, std::vector<MarkedPoint> marked,
                      std::string label) {
    check_form(P, "numerator");
    check_form(Q, "denominator");
    if (P.deg != Q.deg) {
        std::ostringstream msg;
        msg << "numerator degree " << P.deg << " and denominator degree " << Q.deg
            << " must match";
        throw FamilyError(msg.str());
    }
    if (P.deg < 2) {
        std::ostringstream msg;
        msg << "map degree " << P.deg << " unsupported; need degree >= 2";
        throw UnsupportedDegreeError(msg.str());
    }
    ParamPolynomial res = poly_matrix_det(sylvester(P, Q));
    if (res.is_zero()) {
        throw SingularFamilyError(
            "identically vanishing resultant: the forms share a factor, so no fiber is a "
            "degree-d endomorphism");
    }
    for (auto& m : marked) m = normalize_marked(std::move(m));
    return MapFamily(std::move(P), std::move(Q), std::move(marked), std::move(label),
                     std::move(res));
}

const ParamPolynomial& resultant_locus(const MapFamily& fam) { return fam.resultant(); }

MarkedPoint normalize_marked(MarkedPoint a) {
    if (a.A.is_zero() && a.B.is_zero()) {
        throw FamilyError("marked point (0 : 0) is not projective");
    }
    ParamPolynomial g = poly_gcd(a.A, a.B);
    if (!g.is_constant()) {
        a.A = exact_divide(a.A, g);
        a.B = exact_divide(a.B, g);
    }

    std::vector<GaussianRational> joint = a.A.coeffs();
    const auto& bc = a.B.coeffs();
    joint.insert(joint.end(), bc.begin(), bc.end());
    GaussianRational content = content_normalize(ParamPolynomial(std::move(joint))).second;
    GaussianRational inv = GaussianRational(1) / content;
    a.A = scale_poly(a.A, inv);
    a.B = scale_poly(a.B, inv);

    const GaussianRational& ref = a.A.is_zero() ? a.B.leading() : a.A.leading();
    static const GaussianRational units[] = {GaussianRational(1), GaussianRational(-1),
                                             GaussianRational(0, 1), GaussianRational(0, -1)};
    for (const auto& u : units) {
        GaussianRational cand = ref * u;
        if (cand.re() > 0 && cand.im() >= 0) {
            if (!(u == units[0])) {
                a.A = scale_poly(a.A, u);
                a.B = scale_poly(a.B, u);
            }
            break;
        }
    }
    return a;
}

MarkedPoint iterate_marked(const MapFamily& fam, const MarkedPoint& a, int n,
                           std::size_t max_coefficients) {
    if (n < 0) throw FamilyError("negative iterate requested");
    MarkedPoint cur = normalize_marked(a);
    const int d = fam.degree();
    const long famdeg =
        std::max(coefficient_degree(fam.numerator()), coefficient_degree(fam.denominator()));

    for (int step = 0; step < n; ++step) {
        const long maxdeg = std::max<long>(0, std::max(cur.A.degree(), cur.B.degree()));
        const std::size_t predicted =
            static_cast<std::size_t>(d) * static_cast<std::size_t>(maxdeg) +
            static_cast<std::size_t>(famdeg) + 1;
        if (2 * predicted > max_coefficients) {
            std::ostringstream msg;
            msg << "iterate " << step + 1 << " of marked point '" << cur.label
                << "' needs about " << 2 * predicted << " coefficients, over the limit "
                << max_coefficients;
            throw ResourceLimitError(msg.str());
        }

        std::vector<ParamPolynomial> Apow(static_cast<std::size_t>(d) + 1),
            Bpow(static_cast<std::size_t>(d) + 1);
        Apow[0] = ParamPolynomial::constant(1);
        Bpow[0] = ParamPolynomial::constant(1);
        for (int k = 1; k <= d; ++k) {
            Apow[static_cast<std::size_t>(k)] = Apow[static_cast<std::size_t>(k - 1)] * cur.A;
            Bpow[static_cast<std::size_t>(k)] = Bpow[static_cast<std::size_t>(k - 1)] * cur.B;
        }

        ParamPolynomial nA, nB;
        for (int k = 0; k <= d; ++k) {
            const ParamPolynomial& pk = fam.numerator().c[static_cast<std::size_t>(k)];
            const ParamPolynomial& qk = fam.denominator().c[static_cast<std::size_t>(k)];
            if (pk.is_zero() && qk.is_zero()) continue;
            ParamPolynomial mono =
                Apow[static_cast<std::size_t>(k)] * Bpow[static_cast<std::size_t>(d - k)];
            if (!pk.is_zero()) nA = nA + pk * mono;
            if (!qk.is_zero()) nB = nB + qk * mono;
        }
        cur = normalize_marked(MarkedPoint{std::move(nA), std::move(nB), cur.label});
    }
    return cur;
}

std::vector<MarkedPoint> marked_orbit(const MapFamily& fam, const MarkedPoint& a, int n) {
    if (n < 0) throw FamilyError("negative orbit length requested");
    std::vector<MarkedPoint> orbit;
    orbit.reserve(static_cast<std::size_t>(n) + 1);
    orbit.push_back(normalize_marked(a));
    for (int k = 0; k < n; ++k) orbit.push_back(iterate_marked(fam, orbit.back(), 1));
    return orbit;
}

namespace {

HomogeneousForm form_dx(const HomogeneousForm& F) {
    HomogeneousForm out{F.deg - 1, std::vector<ParamPolynomial>(static_cast<std::size_t>(F.deg))};
    for (int k = 1; k <= F.deg; ++k) {
        out.c[static_cast<std::size_t>(k - 1)] =
            scale_poly(F.c[static_cast<std::size_t>(k)], GaussianRational(k));
    }
    return out;
}

HomogeneousForm form_dy(const HomogeneousForm& F) {
    HomogeneousForm out{F.deg - 1, std::vector<ParamPolynomial>(static_cast<std::size_t>(F.deg))};
    for (int k = 0; k < F.deg; ++k) {
        out.c[static_cast<std::size_t>(k)] =
            scale_poly(F.c[static_cast<std::size_t>(k)], GaussianRational(F.deg - k));
    }
    return out;
}

HomogeneousForm form_mul(const HomogeneousForm& F, const HomogeneousForm& G) {
    HomogeneousForm out{F.deg + G.deg,
                        std::vector<ParamPolynomial>(static_cast<std::size_t>(F.deg + G.deg) + 1)};
    for (int i = 0; i <= F.deg; ++i) {
        if (F.c[static_cast<std::size_t>(i)].is_zero()) continue;
        for (int j = 0; j <= G.deg; ++j) {
            if (G.c[static_cast<std::size_t>(j)].is_zero()) continue;
            out.c[static_cast<std::size_t>(i + j)] =
                out.c[static_cast<std::size_t>(i + j)] +
                F.c[static_cast<std::size_t>(i)] * G.c[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

}  // namespace

HomogeneousForm critical_polynomial(const MapFamily& fam) {
    const HomogeneousForm& P = fam.numerator();
    const HomogeneousForm& Q = fam.denominator();
    HomogeneousForm lhs = form_mul(form_dx(P), form_dy(Q));
    HomogeneousForm rhs = form_mul(form_dy(P), form_dx(Q));
    HomogeneousForm W{lhs.deg, std::move(lhs.c)};
    for (std::size_t k = 0; k < W.c.size(); ++k) W.c[k] = W.c[k] - rhs.c[k];
    return W;
}

FiberMap specialize(const MapFamily& fam, std::complex<double> s, double degeneracy_tol) {
    const int d = fam.degree();
    FiberMap f;
    f.degree = d;
    f.p.resize(static_cast<std::size_t>(d) + 1);
    f.q.resize(static_cast<std::size_t>(d) + 1);
    double scale = 1.0;
    for (int k = 0; k <= d; ++k) {
        f.p[static_cast<std::size_t>(k)] = fam.numerator().c[static_cast<std::size_t>(k)].eval(s);
        f.q[static_cast<std::size_t>(k)] =
            fam.denominator().c[static_cast<std::size_t>(k)].eval(s);
        scale = std::max({scale, std::abs(f.p[static_cast<std::size_t>(k)]),
                          std::abs(f.q[static_cast<std::size_t>(k)])});
    }
    const double res_abs = std::abs(fam.resultant().eval(s));
    const double tol =
        degeneracy_tol >= 0 ? degeneracy_tol : 1e-12 * std::pow(scale, 2.0 * d);
    if (!(res_abs > tol)) {
        std::ostringstream msg;
        msg << "degenerate fiber at s = (" << s.real() << ", " << s.imag() << "): |Res| = "
            << res_abs << " <= " << tol;
        throw DegenerateFiberError(msg.str());
    }
    f.res_abs = res_abs;
    return f;
}

std::pair<std::complex<double>, std::complex<double>> FiberMap::apply(
    std::complex<double> X, std::complex<double> Y) const {
    auto horner = [](const std::vector<std::complex<double>>& c, std::complex<double> t,
                     bool reversed) {
        std::complex<double> acc = 0.0;
        if (reversed) {
            for (std::size_t k = 0; k < c.size(); ++k) acc = acc * t + c[k];
        } else {
            for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
        }
        return acc;
    };
    if (std::abs(X) <= std::abs(Y)) {
        std::complex<double> t = X / Y;
        std::complex<double> yd = std::pow(Y, degree);
        return {yd * horner(p, t, false), yd * horner(q, t, false)};
    }
    std::complex<double> u = Y / X;
    std::complex<double> xd = std::pow(X, degree);
    return {xd * horner(p, u, true), xd * horner(q, u, true)};
}

double chordal(std::complex<double> X1, std::complex<double> Y1, std::complex<double> X2,
               std::complex<double> Y2) {
    double n1 = std::hypot(std::abs(X1), std::abs(Y1));
    double n2 = std::hypot(std::abs(X2), std::abs(Y2));
    return std::abs(X1 * Y2 - X2 * Y1) / (n1 * n2);
}

std::complex<double> numeric_resultant(const std::vector<std::complex<double>>& p,
                                       const std::vector<std::complex<double>>& q, int d) {
    const std::size_t n = 2 * static_cast<std::size_t>(d);
    std::vector<std::vector<std::complex<double>>> m(n, std::vector<std::complex<double>>(n, 0.0));
    for (int i = 0; i < d; ++i) {
        for (int t = 0; t <= d; ++t) {
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + t)] =
                p[static_cast<std::size_t>(d - t)];
            m[static_cast<std::size_t>(d + i)][static_cast<std::size_t>(i + t)] =
                q[static_cast<std::size_t>(d - t)];
        }
    }
    std::complex<double> det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (m[pivot][col] == std::complex<double>(0.0)) return 0.0;
        if (pivot != col) {
            std::swap(m[pivot], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            std::complex<double> factor = m[r][col] / m[col][col];
            if (factor == std::complex<double>(0.0)) continue;
            for (std::size_t cc = col; cc < n; ++cc) m[r][cc] -= factor * m[col][cc];
        }
    }
    return det;
}

}  // namespace prepllab
