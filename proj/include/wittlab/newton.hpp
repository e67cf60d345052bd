#ifndef WITTLAB_NEWTON_HPP
#define WITTLAB_NEWTON_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "lognorm.hpp"
#include "perf_elem.hpp"
#include "rational.hpp"
#include "seminorm.hpp"
#include "witt_elem.hpp"

namespace wittlab {

// Newton polygons on W (and the Laurent variant W-dagger), division by
// primitive degree-1 elements, root search, and factorization into
// p - [u_i] times a stable unit.
//
// Axis convention: digit index i horizontal, log-norm w_i = gamma*v_t(x_i)
// vertical; the lower convex hull is computed and only segments of slope
// <= -1 are kept. Multiplicity of a slope = horizontal length of its
// segment, which makes multiplicities integers additive under products and
// equal to the factor count.

struct NewtonPolygon {
    struct Segment {
        Rational slope;   // <= -1
        long long length; // horizontal extent, a positive integer
    };
    std::vector<Segment> segments; // hull order: steepest (most negative) first

    bool empty() const { return segments.empty(); }

    long long total_multiplicity() const {
        long long n = 0;
        for (const auto& s : segments) n += s.length;
        return n;
    }

    // Multiplicity of an exact slope value.
    long long multiplicity(const Rational& r) const {
        for (const auto& s : segments)
            if (s.slope == r) return s.length;
        return 0;
    }

    std::map<Rational, long long> slope_multiset() const {
        std::map<Rational, long long> m;
        for (const auto& s : segments) m[s.slope] += s.length;
        return m;
    }

    friend bool operator==(const NewtonPolygon& a, const NewtonPolygon& b) {
        return a.slope_multiset() == b.slope_multiset();
    }
    friend bool operator!=(const NewtonPolygon& a, const NewtonPolygon& b) { return !(a == b); }

    std::string to_tsv() const {
        std::string out;
        for (const auto& s : segments)
            out += s.slope.str() + "\t" + std::to_string(s.length) + "\n";
        return out;
    }
};

// Lower convex hull of the exact digit points (i, gamma*v_t(x_i)), keeping
// slopes <= -1. Truncated digits are sound to skip on the left flank of the
// hull only when their bound lies above it; otherwise the polygon is not
// certified.
inline NewtonPolygon newton_polygon(const WittElem& w) {
    TeichDigits d = teich_expand(w);
    const Rational gamma = w.config().gamma;
    struct Pt {
        long long i;
        Rational v;
        bool exact;
    };
    std::vector<Pt> pts;
    bool any_exact = false;
    for (int i = 0; i < d.precN; ++i) {
        const PerfElem& di = d[static_cast<std::size_t>(i)];
        if (di.is_zero_rep()) {
            pts.push_back({i, gamma * di.trunc(), false});
        } else {
            pts.push_back({i, gamma * di.valuation(), true});
            any_exact = true;
        }
    }
    if (!any_exact) throw PrecisionExceeded("Newton polygon of an element with no visible digits");

    // Lower hull over exact points (Andrew monotone chain; indices ascend).
    std::vector<Pt> ex;
    for (const Pt& p : pts)
        if (p.exact) ex.push_back(p);
    std::vector<Pt> hull;
    for (const Pt& p : ex) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // Drop b if it lies on or above segment a-p.
            Rational lhs = (b.v - a.v) * Rational(p.i - a.i);
            Rational rhs = (p.v - a.v) * Rational(b.i - a.i);
            if (lhs >= rhs)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }

    // Truncated digits must not be able to dip below the certified hull on
    // the slope <= -1 window.
    auto hull_value_at = [&](long long i) -> std::optional<Rational> {
        if (hull.size() == 1) return i == hull[0].i ? std::optional<Rational>(hull[0].v) : std::nullopt;
        for (std::size_t k = 0; k + 1 < hull.size(); ++k)
            if (hull[k].i <= i && i <= hull[k + 1].i) {
                Rational t = Rational(i - hull[k].i) / Rational(hull[k + 1].i - hull[k].i);
                return hull[k].v + (hull[k + 1].v - hull[k].v) * t;
            }
        return std::nullopt;
    };
    for (const Pt& p : pts) {
        if (p.exact) continue;
        auto hv = hull_value_at(p.i);
        bool interferes = false;
        if (hv && p.v < *hv) interferes = true;
        // Left of the hull a lower point would create a new slope <= -1
        // segment whenever it can reach the first vertex with slope <= -1.
        if (!hull.empty() && p.i < hull.front().i) {
            Rational reach = hull.front().v + Rational(hull.front().i - p.i); // slope -1 back-cast
            if (p.v < reach) interferes = true;
        }
        if (interferes)
            throw PrecisionExceeded("truncated digit could reshape the Newton polygon");
    }

    NewtonPolygon poly;
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        Rational slope = (hull[k + 1].v - hull[k].v) / Rational(hull[k + 1].i - hull[k].i);
        if (slope <= Rational(-1))
            poly.segments.push_back({slope, hull[k + 1].i - hull[k].i});
    }
    return poly;
}

// Units of W-dagger are exactly the nonzero stable elements, equivalently
// the elements with empty Newton polygon; both criteria are evaluated and
// must agree.
inline bool is_unit_stable(const WittElem& w) {
    TeichDigits d = teich_expand(w);
    if (d.digits.empty() || d[0].is_zero_rep()) return false;
    bool stable = is_stable(w);
    bool no_slopes = newton_polygon(w).empty();
    if (stable != no_slopes)
        throw PrecisionExceeded("stability and Newton-polygon unit criteria disagree at precision");
    return stable;
}

// Quotient q with q * (p - [u]) = x up to the working window; fails with
// NotDivisible when the residue of x mod (p - [u]) is visible above the
// threshold (by default the element's own exactness threshold; a caller
// whose root is only certified at a coarser precision passes that instead).
inline WittElem divide_by_primitive(const WittElem& x, const PerfElem& u,
                                    std::optional<Rational> threshold = std::nullopt) {
    if (u.is_zero_rep()) {
        // p - [0] = p: plain exact division.
        return x.divided_by_p();
    }
    PrimitiveElem pi = PrimitiveElem::from_center(u, x.precision());
    StableDivmod dm = stable_divmod(x, pi);
    LogNorm res = lambda_norm(dm.residue);
    Rational thr = threshold ? *threshold : exactness_threshold(x);
    if (!res.log_ge(thr))
        throw NotDivisible("residue " + res.str() + " above the threshold p^-(" + thr.str() + ")");
    return dm.quotient;
}

struct RootSearchLattice {
    int K_search = 1;
    Rational E_search = Rational(3);
    long long candidate_cap = 1 << 20;
};

namespace newton_detail {

// Candidate centers: all u = sum c_e t^e over lattice exponents in
// [1/gamma, E_search) with denominators dividing p^K_search, plus u = 0.
// Enumerated in a canonical order so results are reproducible.
inline std::vector<Rational> lattice_exponents(const RingConfig& cfg, const RootSearchLattice& lat) {
    std::vector<Rational> exps;
    Rational step(1, pow_ll(cfg.p, lat.K_search));
    for (Rational e(0); e < lat.E_search; e += step) exps.push_back(e);
    return exps;
}

inline PerfElem candidate_from_index(const RingConfig& cfg, const std::vector<Rational>& exps,
                                     long long idx) {
    PerfElem u(cfg);
    for (const Rational& e : exps) {
        long long c = idx % cfg.p;
        idx /= cfg.p;
        if (c != 0) u.add_term(e, c);
    }
    return u;
}

// H(alpha, u, 0)(x) as a plain divisibility score (lower log = larger
// residue); used to rank candidates.
inline LogNorm residue_score(const WittElem& x, const PerfElem& u) {
    PrimitiveElem pi = PrimitiveElem::from_center(u, x.precision());
    return h_norm(pi, SValue::inf(), x);
}

} // namespace newton_detail

// Exhaustive lattice search for centers u with x divisible by p - [u] at the
// working precision; duplicate centers generating the same ideal are
// grouped, one representative each (first in enumeration order).
inline std::vector<PerfElem> brute_force_roots(const WittElem& x, const RootSearchLattice& lat,
                                               int jobs = 1) {
    const RingConfig& cfg = x.config();
    std::vector<Rational> exps = newton_detail::lattice_exponents(cfg, lat);
    long long total = 1;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        total *= cfg.p;
        if (total > lat.candidate_cap)
            throw SearchSpaceTooLarge("root search lattice has more than " +
                                      std::to_string(lat.candidate_cap) + " candidates");
    }
    Rational thr = exactness_threshold(x);

    std::vector<char> hits(static_cast<std::size_t>(total), 0);
    auto eligible = [&](const PerfElem& u) {
        return u.is_zero_rep() || cfg.gamma * u.valuation() >= Rational(1);
    };
    auto worker = [&](long long lo, long long hi) {
        for (long long idx = lo; idx < hi; ++idx) {
            PerfElem u = newton_detail::candidate_from_index(cfg, exps, idx);
            if (!eligible(u)) continue;
            LogNorm score = newton_detail::residue_score(x, u);
            if (score.log_ge(thr)) hits[static_cast<std::size_t>(idx)] = 1;
        }
    };
    if (jobs <= 1) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errs(static_cast<std::size_t>(jobs));
        long long chunk = (total + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            long long lo = j * chunk, hi = std::min<long long>(total, lo + chunk);
            if (lo >= hi) continue;
            pool.emplace_back([&, j, lo, hi] {
                try {
                    worker(lo, hi);
                } catch (...) {
                    errs[static_cast<std::size_t>(j)] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
    }

    std::vector<PerfElem> roots;
    for (long long idx = 0; idx < total; ++idx) {
        if (!hits[static_cast<std::size_t>(idx)]) continue;
        PerfElem u = newton_detail::candidate_from_index(cfg, exps, idx);
        bool dup = false;
        for (const PerfElem& r : roots)
            if (same_ideal_at_precision(r, u)) {
                dup = true;
                break;
            }
        if (!dup) roots.push_back(u);
    }
    return roots;
}

// Greedy digit-by-digit root construction: start from the valuation given by
// the steepest polygon slope, extend one lattice coefficient at a time,
// always keeping the choice that shrinks the residue the most. Ultrametric
// separation of the roots makes the locally best digit globally sound; a
// brute-force fallback covers small lattices when the greedy stalls.
struct RootCandidate {
    PerfElem u;
    LogNorm achieved; // residue score H(alpha,u,0)(x) of the returned center
};

inline RootCandidate find_root_best(const WittElem& x, int K_search = -1) {
    const RingConfig& cfg = x.config();
    if (K_search < 0) K_search = cfg.K;
    NewtonPolygon poly = newton_polygon(x);
    if (poly.empty())
        throw RootSearchFailed("element is a unit at working precision; no roots");
    Rational v0 = -poly.segments.front().slope / cfg.gamma; // deepest root valuation
    Rational step(1, pow_ll(cfg.p, K_search));
    Rational thr = exactness_threshold(x);

    // Conservative rank of a residue score: AtMost(b) certifies log >= b.
    auto rank = [&](const LogNorm& n) {
        if (n.is_infinite()) return thr + Rational(1);
        return n.log_value();
    };

    PerfElem u = PerfElem::zero(cfg);
    LogNorm best = newton_detail::residue_score(x, u);
    {
        // Snap the starting exponent onto the search lattice.
        long long q = pow_ll(cfg.p, K_search);
        Rational scaled = v0 * Rational(q);
        v0 = Rational(scaled.ceil(), q);
    }
    for (Rational e = v0; e < cfg.E; e += step) {
        if (best.log_ge(thr)) break;
        long long chosen = 0;
        for (long long c = 1; c < cfg.p; ++c) {
            PerfElem cand = u;
            cand.add_term(e, c);
            if (cfg.gamma * cand.valuation() < Rational(1)) continue;
            LogNorm score = newton_detail::residue_score(x, cand);
            if (rank(score) > rank(best)) {
                best = score;
                chosen = c;
            }
        }
        if (chosen != 0) u.add_term(e, chosen);
    }
    return {u, best};
}

// Root with residue below the working threshold; falls back to a brute-force
// sweep on small lattices when the greedy ends short of it.
inline PerfElem find_root(const WittElem& x, int K_search = -1) {
    RootCandidate best = find_root_best(x, K_search);
    Rational thr = exactness_threshold(x);
    if (best.achieved.log_ge(thr)) return best.u;
    RootSearchLattice lat;
    lat.K_search = K_search < 0 ? x.config().K : K_search;
    lat.E_search = x.config().E;
    lat.candidate_cap = 1 << 16;
    try {
        std::vector<PerfElem> all = brute_force_roots(x, lat);
        if (!all.empty()) return all.front();
    } catch (const SearchSpaceTooLarge&) {
        throw RootSearchFailed("greedy root search ended at p^-(" +
                               (best.achieved.is_infinite() ? std::string("inf")
                                                            : best.achieved.log_value().str()) +
                               ") short of the threshold p^-(" + thr.str() +
                               "), and the lattice is too large to sweep");
    }
    throw RootSearchFailed("no root found at working precision");
}

// Factorization x = unit * prod (p - [u_i]) with the root count given by the
// polygon multiplicities; powers of p come out first as roots u = 0.
struct FactorResult {
    WittElem unit;
    std::vector<PerfElem> roots;
    LogNorm residual; // bound on lambda(x - unit * prod(p - [u_i]))
};

inline FactorResult factor(const WittElem& x, int K_search = -1) {
    const RingConfig& cfg = x.config();
    FactorResult out;
    WittElem cur = x;
    if (cur.is_zero_rep()) throw NotDivisible("cannot factor the zero representation");
    const int baseN = x.precision();
    const Rational base_thr = Rational::min(Rational(baseN), cfg.gamma * x.trunc());

    while (!cur.is_zero_rep() && cur.precision() >= 1 && cur.reduce_mod_p().is_zero_rep()) {
        cur = cur.divided_by_p();
        out.roots.push_back(PerfElem::zero(cfg));
    }

    // Each division costs one digit of bookkeeping precision; pad up front
    // so the reassembly residual can still be certified at the base
    // threshold.
    long long expected = newton_polygon(cur).total_multiplicity();
    cur = seminorm_detail::inflated(cur, cur.precision() + static_cast<int>(expected) + 1);
    for (long long k = 0; k < expected; ++k) {
        // Roots are hunted on the base-precision view; the division itself
        // runs on the padded element to keep the bookkeeping losses covered.
        // A root whose best representable residue ends short of the
        // threshold (the infinitely ramified centers of the same-ideal
        // examples) is still divided out, and the reassembly residual below
        // reports the honestly achieved bound.
        RootCandidate rc =
            find_root_best(cur.reduced_precision(std::min(cur.precision(), baseN)), K_search);
        PerfElem u = rc.u;
        Rational accept = base_thr;
        if (!rc.achieved.is_infinite() && rc.achieved.log_value() < accept)
            accept = rc.achieved.log_value();
        if (u.is_zero_rep())
            cur = cur.divided_by_p();
        else
            cur = divide_by_primitive(cur, u, accept);
        out.roots.push_back(u);
    }
    out.unit = cur.reduced_precision(
        std::max(1, baseN - static_cast<int>(out.roots.size())));

    // Reassemble and report the residual bound, capped at the precision the
    // input actually carried.
    WittElem prod = seminorm_detail::inflated(out.unit, baseN + 1);
    for (const PerfElem& u : out.roots) {
        WittElem fac = WittElem::prime(cfg, baseN + 1) - teich(u, baseN + 1);
        prod = prod * fac;
    }
    out.residual =
        lambda_norm(seminorm_detail::inflated(x, baseN + 1) - prod).capped(base_thr);
    return out;
}

} // namespace wittlab

#endif
