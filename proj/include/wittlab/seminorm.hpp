#ifndef WITTLAB_SEMINORM_HPP
#define WITTLAB_SEMINORM_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "lognorm.hpp"
#include "perf_elem.hpp"
#include "pwl_curve.hpp"
#include "rational.hpp"
#include "witt_elem.hpp"

namespace wittlab {

// -------------------------------------------------------------------------
// The seminorm calculus on W(R): the lifted Gauss norm lambda, stability,
// stable residues and presentations with respect to a primitive element pi,
// the interpolated quotient seminorms H(alpha,pi,t), the fibre points
// beta_{u,t} with their homotopy / radius / domination / metric / tree
// structure, and Berkovich-style classification.
//
// Radius parameters are kept in -log_p scale: s >= 0 rational or +infinity,
// meaning t = p^(-s). s = 0 is the lambda point, s = +infinity the quotient
// norm W(R)/(pi).
// -------------------------------------------------------------------------

// Values beyond min(precision, gamma * trunc) cannot be distinguished from
// truncation effects; everything reported at or above it becomes AtMost.
inline Rational exactness_threshold(const WittElem& w) {
    return Rational::min(Rational(w.precision()), w.config().gamma * w.trunc());
}

// lambda(alpha)(sum p^i [x_i]) = max_i p^(-i) alpha(x_i); in log scale the
// min over digits of i + gamma * v_t(x_i).
inline LogNorm lambda_norm(const WittElem& w) {
    TeichDigits d = teich_expand(w);
    const Rational gamma = w.config().gamma;
    Rational bound = exactness_threshold(w);
    std::optional<Rational> best;
    for (int i = 0; i < d.precN; ++i) {
        const PerfElem& di = d[static_cast<std::size_t>(i)];
        if (di.is_zero_rep()) continue;
        Rational c = Rational(i) + gamma * di.valuation();
        if (!best || c < *best) best = c;
    }
    if (best && *best < bound) return LogNorm::exact(*best);
    return LogNorm::at_most(bound);
}

// Capital Lambda (the trivial-norm-bounded companion): min over digits of
// gamma * v_t(x_i), no p-weighting. Computed on the stored representative;
// unlike lambda this is not p-adically continuous, so hidden digits beyond
// the precision are not covered (they never are, for any finite model).
inline LogNorm capital_lambda_norm(const WittElem& w) {
    TeichDigits d = teich_expand(w);
    const Rational gamma = w.config().gamma;
    std::optional<Rational> best;
    for (int i = 0; i < d.precN; ++i) {
        const PerfElem& di = d[static_cast<std::size_t>(i)];
        if (di.is_zero_rep()) continue;
        Rational c = gamma * di.valuation();
        if (!best || c < *best) best = c;
    }
    if (!best) return LogNorm::at_most(gamma * w.trunc());
    return LogNorm::exact(*best);
}

// x = sum p^i [x_i] is stable when alpha(x_0) > p^(-i) alpha(x_i) for all
// i > 0 (or every digit vanishes). Undecidable digit comparisons throw.
inline bool is_stable(const WittElem& w) {
    TeichDigits d = teich_expand(w);
    const Rational gamma = w.config().gamma;
    bool all_zero = true;
    for (int i = 0; i < d.precN; ++i)
        if (!d[static_cast<std::size_t>(i)].is_zero_rep()) all_zero = false;
    if (all_zero) return true;

    const PerfElem& d0 = d[0];
    bool undecidable = false;
    for (int i = 1; i < d.precN; ++i) {
        const PerfElem& di = d[static_cast<std::size_t>(i)];
        if (!d0.is_zero_rep() && !di.is_zero_rep()) {
            if (!(gamma * d0.valuation() < Rational(i) + gamma * di.valuation())) return false;
        } else if (d0.is_zero_rep() && !di.is_zero_rep()) {
            // alpha(x_0) <= p^(-gamma trunc); strict domination fails once the
            // bound reaches the digit's weight.
            if (gamma * d0.trunc() >= Rational(i) + gamma * di.valuation()) return false;
            undecidable = true;
        } else if (!d0.is_zero_rep() && di.is_zero_rep()) {
            if (gamma * d0.valuation() < Rational(i) + gamma * di.trunc()) continue;
            undecidable = true;
        } else {
            undecidable = true;
        }
    }
    if (undecidable)
        throw PrecisionExceeded("stability undecidable: truncated digits block the comparison");
    return true;
}

// Radius parameter in log scale: t = p^(-s), with s = +infinity for t = 0.
struct SValue {
    bool infinite = false;
    Rational s;

    static SValue finite(const Rational& v) {
        if (v.is_negative()) throw ParseError("radius parameter s must be >= 0");
        return SValue{false, v};
    }
    static SValue inf() { return SValue{true, Rational(0)}; }

    bool is_zero() const { return !infinite && s.is_zero(); }

    friend bool operator==(const SValue& a, const SValue& b) {
        return a.infinite == b.infinite && (a.infinite || a.s == b.s);
    }
    friend bool operator!=(const SValue& a, const SValue& b) { return !(a == b); }
    // Order of the parameter s (larger s = smaller disc).
    friend bool operator<=(const SValue& a, const SValue& b) {
        if (a.infinite) return b.infinite;
        if (b.infinite) return true;
        return a.s <= b.s;
    }

    static SValue min(const SValue& a, const SValue& b) { return a <= b ? a : b; }

    std::string str() const { return infinite ? "inf" : s.str(); }
};

// Primitive element of degree 1: pi = sum p^i [pi_i] with alpha(pi_0) <=
// p^(-1) and pi_1 a unit. The generators of the fibre construction.
class PrimitiveElem {
  public:
    static PrimitiveElem make(const WittElem& pi) {
        if (pi.precision() < 2)
            throw InsufficientPrecision("a primitive element needs precision >= 2 to see digit 1");
        TeichDigits d = teich_expand(pi);
        const Rational gamma = pi.config().gamma;
        const PerfElem& d0 = d[0];
        if (!d0.is_zero_rep() && gamma * d0.valuation() < Rational(1))
            throw NotPrimitive("alpha(pi_0) must be <= p^-1");
        if (d0.is_zero_rep() && gamma * d0.trunc() < Rational(1))
            throw PrecisionExceeded("cannot certify alpha(pi_0) <= p^-1 at this truncation");
        const PerfElem& d1 = d[1];
        if (d1.is_zero_rep())
            throw PrecisionExceeded("cannot certify that pi_1 is a unit at this truncation");
        if (!d1.valuation().is_zero()) throw NotPrimitive("pi_1 must be a unit of R");
        PrimitiveElem p;
        p.pi_ = pi;
        p.pi0_ = d0;
        return p;
    }

    // The special case pi = p - [u].
    static PrimitiveElem from_center(const PerfElem& u, int precN = -1) {
        const RingConfig& cfg = u.config();
        if (precN < 0) precN = cfg.N;
        if (!u.is_zero_rep() && cfg.gamma * u.valuation() < Rational(1))
            throw NotPrimitive("center must satisfy alpha(u) <= p^-1");
        WittElem pi = WittElem::prime(cfg, precN) - teich(u, precN);
        PrimitiveElem p;
        if (precN >= 2) {
            p = make(pi);
        } else {
            p.pi_ = pi;
            p.pi0_ = pi.reduce_mod_p();
        }
        p.center_ = u;
        return p;
    }

    const WittElem& pi() const { return pi_; }
    const PerfElem& pi0() const { return pi0_; }
    const std::optional<PerfElem>& center() const { return center_; }
    const RingConfig& config() const { return pi_.config(); }

    PrimitiveElem at_precision(int precN) const {
        if (center_) return from_center(*center_, precN);
        // Zero-pad the coefficients; the threshold capping of every reported
        // value covers the padding.
        WittElem w(pi_.config(), precN, pi_.laurent());
        w.set_trunc(pi_.trunc());
        for (const auto& [e, c] : pi_.terms()) w.add_term(e, c);
        return make(w);
    }

  private:
    WittElem pi_;
    PerfElem pi0_;
    std::optional<PerfElem> center_;
};

// Result of reducing x modulo pi to a stable (or negligible) residue, with
// the accumulated quotient: x = residue + quotient * pi at working accuracy.
struct StableDivmod {
    WittElem residue;
    WittElem quotient;
    int iterations = 0;
    bool negligible = false; // residue indistinguishable from 0 at threshold
};

namespace seminorm_detail {

// Weak stability reached by the iteration: alpha(y_0) >= alpha(y_i) for all
// i > 0 on the representative (zero digits pass vacuously).
inline bool weakly_stable_rep(const TeichDigits& d) {
    if (d.digits.empty() || d[0].is_zero_rep()) return false;
    const Rational& v0 = d[0].valuation();
    for (std::size_t i = 1; i < d.size(); ++i)
        if (!d[i].is_zero_rep() && d[i].valuation() < v0) return false;
    return true;
}

// Every digit of the representative sits at or beyond the threshold.
inline bool negligible_rep(const TeichDigits& d, const Rational& gamma, const Rational& thr) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].is_zero_rep()) continue;
        if (Rational(static_cast<long long>(i)) + gamma * d[i].valuation() < thr) return false;
    }
    return true;
}

inline WittElem inflated(const WittElem& w, int precN) {
    if (precN <= w.precision()) return w.reduced_precision(precN);
    WittElem r(w.config(), precN, w.laurent());
    r.set_trunc(w.trunc());
    for (const auto& [e, c] : w.terms()) r.add_term(e, c);
    return r;
}

} // namespace seminorm_detail

// Default iteration budget: each pass gains a factor alpha(pi_0) in the
// t-adic size of the remainder, so ceil(E / v_t(pi_0)) passes push it out of
// the window.
inline int default_residue_budget(const PrimitiveElem& pi) {
    const RingConfig& cfg = pi.config();
    if (pi.pi0().is_zero_rep()) return 1;
    Rational v = pi.pi0().valuation();
    long long b1 = (cfg.E / v).ceil();
    long long b2 = (cfg.E / (cfg.gamma * v)).ceil();
    return static_cast<int>(std::max(b1, b2)) + 1;
}

namespace seminorm_detail {

// The Teichmueller lift of pi_0, recovered from pi itself when pi = p - [u]
// ([-u] = -[u] for odd p, [-u] = [u] for p = 2), so that no lift has to be
// recomputed at inflated precision.
inline WittElem teich_of_pi0(const PrimitiveElem& piP, int P) {
    if (piP.center()) {
        WittElem tu = WittElem::prime(piP.config(), P) - piP.pi(); // [u]
        return piP.config().p == 2 ? tu : -tu;
    }
    return teich(piP.pi0(), P);
}

// One bounded-precision run of the residue iteration
//   x_{i+1} = x_i - p^{-1} w (x_i - L_i) pi,
// where L_i is the coefficient-wise naive lift of the i-th reduction. A
// naive lift has all Teichmueller digits at valuation >= v(x_{i0}), which is
// all the descent argument of the construction uses, and it keeps the
// iteration polynomial-sized where a true Teichmueller lift at inflated
// precision would be exponentially dense. Returns nothing if the allowance
// of `b` division steps was not enough to reach a stable or negligible
// state.
inline std::optional<StableDivmod> try_divmod(const WittElem& x, const PrimitiveElem& pi, int b) {
    const RingConfig& cfg = x.config();
    const int baseN = x.precision();
    const int P = baseN + b;
    cfg.check_coeff_range(P);

    PrimitiveElem piP = pi.at_precision(P);
    WittElem w = witt_inv((piP.pi() - teich_of_pi0(piP, P)).divided_by_p());
    WittElem cur = inflated(x, P);
    WittElem quotient = WittElem::zero(cfg, P);
    quotient.set_trunc(cur.trunc());

    StableDivmod out;
    for (int it = 0;; ++it) {
        if (cur.is_zero_rep()) {
            out.negligible = true;
            break;
        }
        // Stop criteria are read at the caller's precision; that is where
        // every norm reading of the residue will happen.
        TeichDigits d = teich_expand(cur.reduced_precision(baseN));
        if (weakly_stable_rep(d)) break;
        bool base_zero = true;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!d[i].is_zero_rep()) base_zero = false;
        if (base_zero) {
            out.negligible = true;
            break;
        }
        if (it >= b || cur.precision() < 2) return std::nullopt;
        PerfElem digit0 = cur.reduce_mod_p();
        WittElem q = w * (cur - WittElem::lift(digit0, cur.precision())).divided_by_p();
        cur = cur - q * piP.pi();
        quotient = quotient + q;
        ++out.iterations;
    }
    out.residue = cur.reduced_precision(baseN);
    out.quotient = quotient.reduced_precision(std::max(baseN - 1, 0));
    return out;
}

// For pi = p - [u] the residue walk substitutes p by [u] one level at a
// time:
//   x_{k+1} = L_k + [u] B_k,   x_k = L_k + p B_k,
// where L_k is the coefficient-wise naive lift of x_k mod p. Each step
// subtracts exactly pi * B_k, every digit of L_k sits at valuation
// >= v(x_{k0}), and v(B_k) grows by v(u) >= 1/gamma per step, so the walk
// descends like the stable-residue construction but needs no unit inverse.
// Because each division by p is paired with a multiplication by [u], crude
// per-step re-padding to constant precision is sound: the padding error at
// step k has t-valuation >= k v(u) on top of its p-level.
inline std::optional<StableDivmod> center_divmod(const WittElem& x, const PrimitiveElem& pi,
                                                 int budget) {
    const RingConfig& cfg = x.config();
    const int baseN = x.precision();
    const int P = baseN + 1;
    cfg.check_coeff_range(P);
    const PerfElem& u = *pi.center();
    const bool u_zero = u.is_zero_rep();
    Rational gv = u_zero ? Rational(0) : cfg.gamma * u.valuation();
    WittElem tu = teich(u, P);

    WittElem cur = inflated(x, P);
    WittElem quotient = WittElem::zero(cfg, P);
    quotient.set_trunc(cur.trunc());

    StableDivmod out;
    bool fired = false;
    for (int k = 0;; ++k) {
        if (cur.is_zero_rep()) {
            out.negligible = true;
            break;
        }
        PerfElem d0 = cur.reduce_mod_p();
        if (fired) break; // the step after the domination condition
        if (!d0.is_zero_rep() &&
            (u_zero || cfg.gamma * d0.valuation() < Rational(k + 1) * gv))
            fired = true;
        if (k >= budget && !fired) return std::nullopt;
        WittElem lift0 = WittElem::lift(d0, P);
        WittElem b = inflated((cur - lift0).divided_by_p(), P);
        cur = lift0 + tu * b;
        cur = inflated(cur, P);
        quotient = inflated(quotient + b, P);
        ++out.iterations;
    }
    out.residue = cur.reduced_precision(baseN);
    out.quotient = quotient.reduced_precision(std::max(baseN - 1, 0));
    return out;
}

} // namespace seminorm_detail

// Reduce x modulo pi to a stable (or negligible) residue. Centers go through
// the substitution walk above; a general primitive pi uses the
// unit-normalized iteration of the stable-residue construction, whose first
// attempt inflates the precision just enough for every reading below the
// exactness threshold.
inline StableDivmod stable_divmod(const WittElem& x, const PrimitiveElem& pi, int budget = -1) {
    if (pi.center()) {
        int walk = budget;
        if (walk < 0) {
            // Enough steps to reach digit-0 domination or walk everything out
            // of the window, plus the trailing confirmation step.
            walk = default_residue_budget(pi) + x.precision() + 2;
        }
        if (auto r = seminorm_detail::center_divmod(x, pi, walk)) return *r;
        throw PrecisionExceeded("stable residue walk exhausted its budget of " +
                                std::to_string(walk));
    }
    const RingConfig& cfg = x.config();
    if (budget < 0) budget = default_residue_budget(pi);
    const int baseN = x.precision();
    Rational thr = Rational::min(Rational(baseN), cfg.gamma * x.trunc());
    int b1 = budget;
    if (!pi.pi0().is_zero_rep()) {
        Rational gv = cfg.gamma * pi.pi0().valuation();
        long long need = (thr / gv).ceil() + 2;
        if (need < budget) b1 = static_cast<int>(need);
    } else {
        b1 = std::min(budget, 2);
    }
    if (auto r = seminorm_detail::try_divmod(x, pi, b1)) return *r;
    if (b1 < budget)
        if (auto r = seminorm_detail::try_divmod(x, pi, budget)) return *r;
    throw PrecisionExceeded("stable residue iteration exhausted its budget of " +
                            std::to_string(budget));
}

inline WittElem stable_residue(const WittElem& x, const PrimitiveElem& pi, int budget = -1) {
    return stable_divmod(x, pi, budget).residue;
}

// Stable presentation x = sum_i x_i pi^i with every digit stable; digit i is
// carried at precision baseN - i (each quotient costs one digit).
struct StablePresentation {
    std::vector<WittElem> digits;
    bool tail_negligible = false; // chain ended with a negligible quotient
    // Lower bound on loglambda of the first unprocessed quotient; the tail
    // sum_{i >= n} x_i pi^i then contributes at least n*(s+1) + tail_floor.
    Rational tail_floor;
};

inline StablePresentation stable_presentation(const WittElem& x, const PrimitiveElem& pi,
                                              int max_digits = -1) {
    if (max_digits < 0) max_digits = x.precision() + 1;
    StablePresentation out;
    WittElem cur = x;
    for (int i = 0; i < max_digits; ++i) {
        if (cur.precision() < 1) break;
        if (cur.is_zero_rep()) {
            out.tail_negligible = true;
            break;
        }
        StableDivmod dm = stable_divmod(cur, pi);
        out.digits.push_back(dm.residue);
        cur = dm.quotient;
    }
    if (cur.precision() >= 1 && cur.is_zero_rep()) {
        out.tail_negligible = true;
        out.tail_floor =
            Rational::min(Rational(cur.precision()), x.config().gamma * cur.trunc());
    }
    return out;
}

// H(alpha,pi,t)(x) = max_i (t/p)^i lambda(x_i) over a stable presentation;
// in log scale the min of i*(s+1) + loglambda(x_i). s = 0 recovers lambda,
// s = +infinity the quotient norm on W(R)/(pi).
inline LogNorm h_norm(const PrimitiveElem& pi, const SValue& s, const WittElem& x) {
    Rational thr = exactness_threshold(x);
    if (s.infinite) {
        StableDivmod dm = stable_divmod(x, pi);
        return lambda_norm(dm.residue).capped(thr);
    }
    StablePresentation pres = stable_presentation(x, pi);
    Rational weight = s.s + Rational(1); // (s+1) per pi-power
    LogNorm acc = LogNorm::at_most(
        Rational(static_cast<long long>(pres.digits.size())) * weight + pres.tail_floor);
    for (std::size_t i = 0; i < pres.digits.size(); ++i) {
        LogNorm li = lambda_norm(pres.digits[i]);
        acc = LogNorm::log_min(acc, li.shifted(Rational(static_cast<long long>(i)) * weight));
    }
    return acc.capped(thr);
}

// Norm profile v_x(s) = -log_p H(alpha,pi,p^-s)(x): the lower envelope of
// the digit lines s |-> i*(s+1) + loglambda(x_i). Exact digits make the
// envelope; truncated digits may only sit above it (else the profile is not
// certified and we throw).
inline PwlCurve v_breakpoints(const PrimitiveElem& pi, const WittElem& x) {
    if (!lambda_norm(x).is_exact())
        throw PrecisionExceeded("v profile needs lambda(x) nonzero at working precision");
    StablePresentation pres = stable_presentation(x, pi);
    Rational thr = exactness_threshold(x);
    std::vector<PwlCurve::Line> lines;
    std::vector<PwlCurve::Line> bound_lines;
    for (std::size_t i = 0; i < pres.digits.size(); ++i) {
        LogNorm li = lambda_norm(pres.digits[i]);
        long long slope = static_cast<long long>(i);
        if (li.is_exact() && !li.is_infinite())
            lines.push_back({slope, li.log_value() + Rational(slope)});
        else if (!li.is_infinite())
            bound_lines.push_back({slope, li.log_value() + Rational(slope)});
    }
    bound_lines.push_back({static_cast<long long>(pres.digits.size()),
                           Rational(static_cast<long long>(pres.digits.size())) + pres.tail_floor});
    PwlCurve env = PwlCurve::lower_envelope(lines);
    // A truncated digit whose bound line dips below the certified envelope
    // anywhere under the threshold clip would invalidate the profile. Both
    // envelopes are piecewise affine, so comparing at the union of their
    // breakpoints (plus the tail slopes) decides it.
    std::vector<PwlCurve::Line> all = lines;
    all.insert(all.end(), bound_lines.begin(), bound_lines.end());
    PwlCurve env2 = PwlCurve::lower_envelope(all);
    std::vector<Rational> breaks;
    for (const auto& piece : env.pieces()) breaks.push_back(piece.s_from);
    for (const auto& piece : env2.pieces()) breaks.push_back(piece.s_from);
    for (const Rational& s : breaks) {
        Rational a = env.value_at(s), b2 = env2.value_at(s);
        if (b2 < a && b2 < thr)
            throw PrecisionExceeded("truncated presentation digit may shape the profile");
    }
    Rational s_big = Rational::max(env.pieces().back().s_from, env2.pieces().back().s_from);
    if (env2.pieces().back().slope < env.pieces().back().slope && env2.value_at(s_big) < thr)
        throw PrecisionExceeded("truncated presentation digit may shape the profile");
    return env;
}

// ---- fibre points -------------------------------------------------------

// beta_{u,t} = H(alpha, p-[u], t), stored as (center u, s with t = p^(-s)).
class FibrePoint {
  public:
    FibrePoint(const PerfElem& u, const SValue& s, int precN = -1)
        : prim_(PrimitiveElem::from_center(u, precN)), s_(s) {}

    const PerfElem& center() const { return *prim_.center(); }
    const SValue& s() const { return s_; }
    const PrimitiveElem& primitive() const { return prim_; }
    const RingConfig& config() const { return prim_.config(); }

    LogNorm eval(const WittElem& x) const { return h_norm(prim_, s_, x); }

  private:
    PrimitiveElem prim_;
    SValue s_;
};

// d(u,u') = p * beta_{u',0}(p - [u]), computed directly through the stable
// residue machinery.
inline LogNorm metric_d(const PerfElem& u, const PerfElem& u2) {
    PrimitiveElem piu = PrimitiveElem::from_center(u);
    PrimitiveElem piu2 = PrimitiveElem::from_center(u2);
    LogNorm h = h_norm(piu2, SValue::inf(), piu.pi());
    return h.shifted(Rational(-1));
}

namespace seminorm_detail {

inline PerfElem as_laurent(const PerfElem& x) {
    PerfElem r(x.config(), true);
    r.set_trunc(x.trunc());
    for (const auto& [e, c] : x.terms()) r.add_term(e, c);
    return r;
}

} // namespace seminorm_detail

// Closed form for d(u,u'), by cases on c = alpha(u'/u - 1):
//   (a) u = 0 or alpha(u'-u) > p^(-p/(p-1)) max(alpha(u),alpha(u')):
//       d = p alpha(u'-u)
//   (b) c strictly between p^(-p^(i+1)/(p-1)) and p^(-p^i/(p-1)):
//       d = p^(1-i) alpha(u) c^(p^-i)
//   (c) c = p^(-p^i/(p-1)), i >= 1: d <= p^(-(i-1)-1/(p-1)) alpha(u), with
//       equality unless alpha(u) = p^-1 and alpha(1 - u^(p^i) (u'/u-1)^(1-p)) < 1,
//       in which case only the bound is certified.
inline LogNorm metric_d_closed_form(const PerfElem& u, const PerfElem& u2) {
    const RingConfig& cfg = u.config();
    const Rational gamma = cfg.gamma;
    const long long p = cfg.p;

    auto check_center = [&](const PerfElem& c) {
        if (!c.is_zero_rep() && gamma * c.valuation() < Rational(1))
            throw NotPrimitive("metric centers must satisfy alpha(u) <= p^-1");
    };
    check_center(u);
    check_center(u2);

    if (u == u2) return LogNorm::zero();
    PerfElem diff = u2 - u;
    if (diff.is_zero_rep())
        return LogNorm::at_most(Rational::min(Rational(cfg.N), gamma * diff.trunc()) - Rational(1));

    // One side indistinguishable from zero: case (a) applies whenever the
    // other side's valuation is visible inside the window.
    if (u.is_zero_rep() || u2.is_zero_rep()) {
        const PerfElem& z = u.is_zero_rep() ? u : u2;
        const PerfElem& nz = u.is_zero_rep() ? u2 : u;
        if (nz.is_zero_rep() || gamma * nz.valuation() >= gamma * z.trunc())
            return LogNorm::at_most(gamma * z.trunc() - Rational(1));
        return LogNorm::exact(gamma * nz.valuation() - Rational(1));
    }

    Rational a = gamma * u.valuation();
    Rational a2 = gamma * u2.valuation();
    if (a != a2) // alpha(u'-u) = max of the two norms: separated, case (a)
        return LogNorm::exact(Rational::min(a, a2) - Rational(1));

    // Equal valuations: work with the ratio r = u'/u - 1.
    PerfElem ul = seminorm_detail::as_laurent(u);
    PerfElem u2l = seminorm_detail::as_laurent(u2);
    PerfElem ratio = u2l * ul.inverse() - PerfElem::constant(cfg, 1, true);
    Rational edge0 = Rational(p, p - 1); // p/(p-1), the case (a)/(b) edge in c-log scale

    if (ratio.is_zero_rep()) {
        // c-log >= gamma * trunc(ratio): d is monotone decreasing in c-log,
        // so evaluate the case formula at the bound.
        Rational clog_min = gamma * ratio.trunc();
        long long i = 0;
        while (Rational(pow_ll(p, static_cast<int>(i + 1)), p - 1) <= clog_min) ++i;
        Rational bound = Rational(i - 1) + a + clog_min / Rational(pow_ll(p, static_cast<int>(i)));
        return LogNorm::at_most(bound);
    }

    Rational clog = gamma * ratio.valuation();
    if (clog < edge0) // case (a) region (agrees with (b) at i = 0 on overlap)
        return LogNorm::exact(a + clog - Rational(1));

    for (long long i = 1;; ++i) {
        Rational pe = Rational(pow_ll(p, static_cast<int>(i)), p - 1);
        Rational pe_next = Rational(pow_ll(p, static_cast<int>(i + 1)), p - 1);
        if (clog == pe) {
            // case (c)
            Rational bound = Rational(i - 1) + Rational(1, p - 1) + a;
            bool exceptional = false;
            if (a == Rational(1)) {
                PerfElem z = PerfElem::constant(cfg, 1, true) -
                             ul.pow(pow_ll(p, static_cast<int>(i))) * ratio.pow(p - 1).inverse();
                exceptional = z.is_zero_rep() || z.valuation().is_positive();
            }
            if (exceptional) return LogNorm::at_most(bound);
            return LogNorm::exact(bound);
        }
        if (clog < pe_next) {
            // case (b) at index i
            return LogNorm::exact(Rational(i - 1) + a + clog / Rational(pow_ll(p, static_cast<int>(i))));
        }
        if (i > 62) throw ArithmeticOverflow("metric case index out of range");
    }
}

// Centers generate the same ideal as far as the working precision can tell:
// distinctness is only certified by an exact finite distance below the
// indistinguishability cutoff.
inline bool same_ideal_at_precision(const PerfElem& u, const PerfElem& u2) {
    const RingConfig& cfg = u.config();
    Rational cutoff = Rational::min(Rational(cfg.N), cfg.gamma * cfg.E) - Rational(1);
    LogNorm d = metric_d_closed_form(u, u2);
    if (d.is_zero()) return true;
    if (d.is_exact()) return d.log_value() >= cutoff;
    return true; // only an upper bound on the distance: not certified distinct
}

// beta_{u,t} >= beta_{u',t'} iff t >= t' and d(u,u') <= t
// (s_P <= s_Q and d-log >= s_P).
inline bool dominates(const FibrePoint& P, const FibrePoint& Q) {
    if (!(P.s() <= Q.s())) return false;
    LogNorm d = metric_d_closed_form(P.center(), Q.center());
    if (P.s().infinite) {
        if (d.is_zero()) return true;
        if (d.is_exact()) return false;
        throw PrecisionExceeded("domination at radius 0 undecidable: centers agree to precision");
    }
    if (d.is_zero()) return true;
    if (d.is_exact()) return d.log_value() >= P.s().s;
    if (d.log_value() >= P.s().s) return true; // bound already certifies it
    throw PrecisionExceeded("domination undecidable: metric known only as a bound");
}

inline bool points_equal(const FibrePoint& P, const FibrePoint& Q) {
    if (P.s() != Q.s()) return false;
    if (P.s().is_zero()) return true; // every center gives the lambda point
    return dominates(P, Q);
}

// H(beta_{u,t}, t2) = beta_{u, max(t,t2)}: in s-scale the min.
inline FibrePoint homotopy(const FibrePoint& P, const SValue& s2) {
    return FibrePoint(P.center(), SValue::min(P.s(), s2));
}

// r(beta_{u,t}) = t, reported as the log-scale parameter s.
inline SValue radius(const FibrePoint& P) { return P.s(); }

// mu(beta)(x) = beta([x]).
inline LogNorm mu_restrict(const FibrePoint& P, const PerfElem& xbar) {
    return P.eval(teich(xbar, P.config().N));
}

enum class PointType { TypeI, TypeII, TypeIII };

inline std::string to_string(PointType t) {
    switch (t) {
        case PointType::TypeI: return "type-i";
        case PointType::TypeII: return "type-ii";
        default: return "type-iii";
    }
}

// Residual data in the sense of the classification: how the value group and
// residue field grow at the point.
struct ResidualDescriptor {
    int value_group_rank_increment = 0;
    enum class ResidueKind { Algebraic, TranscendenceDegree1, Finite } residue_kind =
        ResidueKind::Algebraic;

    std::string residue_kind_str() const {
        switch (residue_kind) {
            case ResidueKind::Algebraic: return "algebraic";
            case ResidueKind::TranscendenceDegree1: return "transcendence-degree-1";
            default: return "finite";
        }
    }
};

// Type I: radius 0. Otherwise t/p lies in the value group p^(-gamma Z[1/p])
// exactly when (s+1)/gamma has p-power denominator: type II; else type III.
inline std::pair<PointType, ResidualDescriptor> classify(const FibrePoint& P) {
    ResidualDescriptor rd;
    if (P.s().infinite) {
        rd.residue_kind = ResidualDescriptor::ResidueKind::Algebraic;
        return {PointType::TypeI, rd};
    }
    Rational q = (P.s().s + Rational(1)) / P.config().gamma;
    if (q.denominator_is_p_power(P.config().p, 62)) {
        rd.residue_kind = ResidualDescriptor::ResidueKind::TranscendenceDegree1;
        return {PointType::TypeII, rd};
    }
    rd.value_group_rank_increment = 1;
    rd.residue_kind = ResidualDescriptor::ResidueKind::Finite;
    return {PointType::TypeIII, rd};
}

// Least upper bound in the domination tree: same center as P, radius grown
// to cover both radii and the distance between the centers.
inline FibrePoint tree_join(const FibrePoint& P, const FibrePoint& Q) {
    SValue s = SValue::min(P.s(), Q.s());
    LogNorm d = metric_d_closed_form(P.center(), Q.center());
    if (!d.is_zero()) {
        if (d.is_exact()) {
            s = SValue::min(s, SValue::finite(Rational::max(d.log_value(), Rational(0))));
        } else if (!(s <= SValue::finite(d.log_value()))) {
            throw PrecisionExceeded("join radius undecidable: metric known only as a bound");
        }
    }
    return FibrePoint(P.center(), s);
}

// r-Gauss norm on W(R)[T] with |.| = lambda: |sum x_i T^i|_r = max |x_i| r^i.
inline LogNorm gauss_norm_poly(const std::vector<WittElem>& coeffs, const LogNorm& r) {
    LogNorm acc = LogNorm::zero();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        LogNorm term = lambda_norm(coeffs[i]);
        if (i > 0) term = term + r.scaled(Rational(static_cast<long long>(i)));
        acc = LogNorm::log_min(acc, term);
    }
    return acc;
}

} // namespace wittlab

#endif
