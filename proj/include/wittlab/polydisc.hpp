#ifndef WITTLAB_POLYDISC_HPP
#define WITTLAB_POLYDISC_HPP

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "lognorm.hpp"
#include "perf_elem.hpp"
#include "rational.hpp"
#include "seminorm.hpp"

namespace wittlab {

// The polynomial-ring analogue over K = Frac(R): Gauss points beta_{z,r} on
// K[T], Hasse-derivative homotopy, domination, discs and classification.
// Serves as the conceptual twin of the fibre machinery and as a second
// oracle for the homotopy/tree semantics.

// Polynomial over K with exact coefficients.
struct KPoly {
    std::vector<PerfElem> coeffs; // coeffs[i] multiplies T^i

    int degree() const {
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
            if (!coeffs[static_cast<std::size_t>(i)].is_zero_rep()) return i;
        return -1;
    }

    static KPoly from_coeffs(std::vector<PerfElem> c) { return KPoly{std::move(c)}; }
};

inline KPoly kpoly_mul(const KPoly& f, const KPoly& g, const RingConfig& cfg) {
    if (f.coeffs.empty() || g.coeffs.empty()) return KPoly{};
    std::vector<PerfElem> out(f.coeffs.size() + g.coeffs.size() - 1,
                              PerfElem::zero(cfg, true));
    for (std::size_t i = 0; i < f.coeffs.size(); ++i)
        for (std::size_t j = 0; j < g.coeffs.size(); ++j)
            out[i + j] = out[i + j] + f.coeffs[i] * g.coeffs[j];
    return KPoly{std::move(out)};
}

// Binomial coefficients mod p along a Pascal row; exact in characteristic p.
inline std::vector<long long> binomial_row_mod_p(int n, long long p) {
    std::vector<long long> row(static_cast<std::size_t>(n) + 1, 0);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j)
            row[static_cast<std::size_t>(j)] =
                (row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j - 1)]) % p;
    return row;
}

// i-th Hasse derivative: D^i(sum a_m T^m) = sum C(m,i) a_m T^(m-i).
// The divided-power form is what (1/i!) d^i/dT^i means in characteristic p.
inline KPoly hasse_derivative(const KPoly& f, int i, const RingConfig& cfg) {
    KPoly out;
    int deg = static_cast<int>(f.coeffs.size()) - 1;
    for (int m = i; m <= deg; ++m) {
        std::vector<long long> row = binomial_row_mod_p(m, cfg.p);
        PerfElem c = f.coeffs[static_cast<std::size_t>(m)] *
                     PerfElem::constant(cfg, row[static_cast<std::size_t>(i)],
                                        f.coeffs[static_cast<std::size_t>(m)].laurent());
        out.coeffs.resize(std::max(out.coeffs.size(), static_cast<std::size_t>(m - i) + 1),
                          PerfElem::zero(cfg, true));
        out.coeffs[static_cast<std::size_t>(m - i)] =
            out.coeffs[static_cast<std::size_t>(m - i)] + c;
    }
    return out;
}

// beta_{z,r}: the r-Gauss point for the generator T - z. The radius is kept
// in log scale (log in [0, +inf], r = p^(-log), log = +inf meaning r = 0).
struct DiscPoint {
    PerfElem center;  // integral: gamma * v_t(z) >= 0
    LogNorm radius;   // Exact log value or zero() for radius 0

    DiscPoint(PerfElem z, LogNorm r) : center(std::move(z)), radius(std::move(r)) {
        if (!center.is_zero_rep() && center.valuation().is_negative())
            throw ParseError("disc centers must be integral");
        if (radius.is_at_most())
            throw ParseError("disc radii must be exact");
        if (!radius.is_infinite() && radius.log_value().is_negative())
            throw ParseError("disc radii lie in [0,1]: log value must be >= 0");
    }
};

// Recenter f at z: coefficients of f(T + z) via Hasse derivatives evaluated
// at z, then apply the r-Gauss formula max |f_j| r^j.
inline LogNorm eval_disc_point(const DiscPoint& P, const KPoly& f) {
    const RingConfig& cfg = P.center.config();
    LogNorm acc = LogNorm::zero();
    int deg = static_cast<int>(f.coeffs.size()) - 1;
    for (int j = 0; j <= deg; ++j) {
        // D^j(f)(z), evaluated by Horner in the recentered variable.
        KPoly dj = hasse_derivative(f, j, cfg);
        PerfElem val = PerfElem::zero(cfg, true);
        for (int m = static_cast<int>(dj.coeffs.size()) - 1; m >= 0; --m)
            val = val * P.center + dj.coeffs[static_cast<std::size_t>(m)];
        LogNorm term = val.norm();
        if (j > 0) {
            if (P.radius.is_infinite()) continue; // r = 0 kills T-z powers
            term = term + P.radius.scaled(Rational(j));
        }
        acc = LogNorm::log_min(acc, term);
    }
    return acc;
}

// Value form of the homotopy: H(beta,t)(f) = max_i t^i beta(D^i f).
inline LogNorm hasse_homotopy(const DiscPoint& P, const LogNorm& t, const KPoly& f) {
    const RingConfig& cfg = P.center.config();
    LogNorm acc = LogNorm::zero();
    int deg = static_cast<int>(f.coeffs.size()) - 1;
    for (int i = 0; i <= deg; ++i) {
        LogNorm term = eval_disc_point(P, hasse_derivative(f, i, cfg));
        if (i > 0) {
            if (t.is_infinite()) continue;
            term = term + t.scaled(Rational(i));
        }
        acc = LogNorm::log_min(acc, term);
    }
    return acc;
}

// Point form: H(beta_{z,r}, t) is the max(t,r)-Gauss point at the same
// center (log-scale min).
inline DiscPoint hasse_homotopy_point(const DiscPoint& P, const LogNorm& t) {
    if (t.is_infinite()) return P;
    if (P.radius.is_infinite()) return DiscPoint(P.center, t);
    return DiscPoint(P.center,
                     LogNorm::exact(Rational::min(P.radius.log_value(), t.log_value())));
}

// beta_{zP,rP} >= beta_{zQ,rQ} iff rP >= rQ and alpha(zP - zQ) <= rP.
inline bool dominates_disc(const DiscPoint& P, const DiscPoint& Q) {
    // radius comparison in log scale: rP >= rQ iff logP <= logQ
    if (!P.radius.is_infinite()) {
        if (!Q.radius.is_infinite() && Q.radius.log_value() < P.radius.log_value()) return false;
    } else if (!Q.radius.is_infinite()) {
        return false;
    }
    LogNorm dist = (P.center - Q.center).norm();
    if (P.radius.is_infinite())
        return dist.is_zero_at(P.center.config().gamma * (P.center - Q.center).trunc());
    return dist.log_ge(P.radius.log_value());
}

inline bool disc_contains(const DiscPoint& P, const PerfElem& z) {
    return dominates_disc(P, DiscPoint(z, LogNorm::zero()));
}

inline DiscPoint disc_join(const DiscPoint& P, const DiscPoint& Q) {
    LogNorm dist = (P.center - Q.center).norm();
    // join radius = max(rP, rQ, alpha(zP - zQ)): min in log scale.
    LogNorm r = P.radius;
    if (!Q.radius.is_infinite())
        r = r.is_infinite() ? Q.radius
                            : LogNorm::exact(Rational::min(r.log_value(), Q.radius.log_value()));
    if (!dist.is_zero()) {
        if (dist.is_at_most()) {
            if (r.is_infinite() || dist.log_value() < r.log_value())
                throw PrecisionExceeded("join radius undecidable: center distance is only a bound");
        } else if (r.is_infinite() || dist.log_value() < r.log_value()) {
            r = LogNorm::exact(Rational::max(dist.log_value(), Rational(0)));
        }
    }
    return DiscPoint(P.center, r);
}

inline bool points_equal_disc(const DiscPoint& P, const DiscPoint& Q) {
    return dominates_disc(P, Q) && dominates_disc(Q, P);
}

// Type I: radius 0. Type II: r in the value group p^(-gamma Z[1/p]).
// Type III: otherwise.
inline std::pair<PointType, ResidualDescriptor> classify_disc(const DiscPoint& P) {
    ResidualDescriptor rd;
    if (P.radius.is_infinite()) {
        rd.residue_kind = ResidualDescriptor::ResidueKind::Algebraic;
        return {PointType::TypeI, rd};
    }
    Rational q = P.radius.log_value() / P.center.config().gamma;
    if (q.denominator_is_p_power(P.center.config().p, 62)) {
        rd.residue_kind = ResidualDescriptor::ResidueKind::TranscendenceDegree1;
        return {PointType::TypeII, rd};
    }
    rd.value_group_rank_increment = 1;
    rd.residue_kind = ResidualDescriptor::ResidueKind::Finite;
    return {PointType::TypeIII, rd};
}

inline SValue disc_radius(const DiscPoint& P) {
    if (P.radius.is_infinite()) return SValue::inf();
    return SValue::finite(P.radius.log_value());
}

} // namespace wittlab

#endif
