#ifndef WITTLAB_SAMPLING_HPP
#define WITTLAB_SAMPLING_HPP

#include <random>

#include "config.hpp"
#include "perf_elem.hpp"
#include "rational.hpp"
#include "witt_elem.hpp"

namespace wittlab {

// Deterministic random elements for the property suites and the CLI
// selftest. All draws go through rint() so a fixed seed reproduces the same
// sample stream on every platform.

inline long long rint(std::mt19937_64& rng, long long n) {
    return static_cast<long long>(rng() % static_cast<unsigned long long>(n));
}

struct SampleOpts {
    int max_terms = 3;
    int denom_pow = 1;      // exponent denominators divide p^denom_pow
    long long max_num = 4;  // numerators drawn from [0, max_num * denominator)
    Rational min_exp = Rational(0);
    bool allow_zero = true;
};

inline PerfElem sample_perf(std::mt19937_64& rng, const RingConfig& cfg, const SampleOpts& o) {
    PerfElem x(cfg);
    int n = static_cast<int>(rint(rng, o.max_terms + (o.allow_zero ? 1 : 0)));
    if (!o.allow_zero) n += 1;
    for (int i = 0; i < n; ++i) {
        long long den = pow_ll(cfg.p, static_cast<int>(rint(rng, o.denom_pow + 1)));
        Rational e = o.min_exp + Rational(rint(rng, o.max_num * den + 1), den);
        if (e >= x.trunc()) continue;
        x.add_term(e, 1 + rint(rng, cfg.p - 1));
    }
    return x;
}

inline PerfElem sample_perf_nonzero(std::mt19937_64& rng, const RingConfig& cfg,
                                    const SampleOpts& o) {
    for (;;) {
        PerfElem x = sample_perf(rng, cfg, o);
        if (!x.is_zero_rep()) return x;
    }
}

// A unit of R (valuation 0).
inline PerfElem sample_unit(std::mt19937_64& rng, const RingConfig& cfg, const SampleOpts& o) {
    PerfElem x = sample_perf(rng, cfg, o);
    PerfElem c = PerfElem::constant(cfg, 1 + rint(rng, cfg.p - 1));
    if (x.is_zero_rep() || !x.valuation().is_zero()) {
        SampleOpts o2 = o;
        o2.min_exp = cfg.lattice_step();
        x = sample_perf(rng, cfg, o2);
        return c + x;
    }
    return x;
}

// A fibre center: gamma * v_t(u) >= 1.
inline PerfElem sample_center(std::mt19937_64& rng, const RingConfig& cfg, const SampleOpts& o) {
    SampleOpts o2 = o;
    o2.min_exp = cfg.lattice_ceil(Rational(1) / cfg.gamma);
    o2.allow_zero = false;
    return sample_perf_nonzero(rng, cfg, o2);
}

// General Witt element, built digit by digit.
inline WittElem sample_witt(std::mt19937_64& rng, const RingConfig& cfg, const SampleOpts& o) {
    WittElem w = WittElem::zero(cfg);
    for (int i = 0; i < cfg.N; ++i) {
        PerfElem d = sample_perf(rng, cfg, o);
        if (d.is_zero_rep()) continue;
        WittElem term = teich(d, cfg.N);
        for (int k = 0; k < i; ++k) term = term.times_p().reduced_precision(cfg.N);
        w = w + term;
    }
    return w;
}

// Stable element: digit 0 with valuation v0, later digits at valuation >= v0
// (which makes the strict domination automatic).
inline WittElem sample_stable(std::mt19937_64& rng, const RingConfig& cfg, const SampleOpts& o) {
    SampleOpts o0 = o;
    o0.allow_zero = false;
    PerfElem d0 = sample_perf_nonzero(rng, cfg, o0);
    WittElem w = teich(d0, cfg.N);
    SampleOpts oi = o;
    oi.min_exp = d0.valuation();
    for (int i = 1; i < cfg.N; ++i) {
        PerfElem d = sample_perf(rng, cfg, oi);
        if (d.is_zero_rep()) continue;
        WittElem term = teich(d, cfg.N);
        for (int k = 0; k < i; ++k) term = term.times_p().reduced_precision(cfg.N);
        w = w + term;
    }
    return w;
}

// Stable unit: valuation-0 leading digit.
inline WittElem sample_stable_unit(std::mt19937_64& rng, const RingConfig& cfg,
                                   const SampleOpts& o) {
    PerfElem d0 = sample_unit(rng, cfg, o);
    WittElem w = teich(d0, cfg.N);
    for (int i = 1; i < cfg.N; ++i) {
        PerfElem d = sample_perf(rng, cfg, o);
        if (d.is_zero_rep()) continue;
        WittElem term = teich(d, cfg.N);
        for (int k = 0; k < i; ++k) term = term.times_p().reduced_precision(cfg.N);
        w = w + term;
    }
    return w;
}

} // namespace wittlab

#endif
