#ifndef WITTLAB_PERF_ELEM_HPP
#define WITTLAB_PERF_ELEM_HPP

#include <map>
#include <string>
#include <utility>

#include "config.hpp"
#include "errors.hpp"
#include "lognorm.hpp"
#include "rational.hpp"

namespace wittlab {

// Sparse element of the truncated perfection of F_p[t] (or its Laurent
// localization): a finite sum of c * t^e with c in F_p \ {0} and e in
// (1/p^K) Z. Terms at exponent >= trunc are dropped; trunc is tracked per
// element since roots shrink the reliable window and products can extend it.
class PerfElem {
  public:
    using TermMap = std::map<Rational, long long>;

    PerfElem() = default;

    explicit PerfElem(RingConfig cfg, bool laurent = false)
        : cfg_(std::move(cfg)), trunc_(cfg_.E), laurent_(laurent) {}

    static PerfElem zero(const RingConfig& cfg, bool laurent = false) {
        return PerfElem(cfg, laurent);
    }

    static PerfElem constant(const RingConfig& cfg, long long c, bool laurent = false) {
        PerfElem x(cfg, laurent);
        x.add_term(Rational(0), c);
        return x;
    }

    static PerfElem monomial(const RingConfig& cfg, long long c, const Rational& e,
                             bool laurent = false) {
        PerfElem x(cfg, laurent);
        x.add_term(e, c);
        return x;
    }

    const RingConfig& config() const { return cfg_; }
    const TermMap& terms() const { return terms_; }
    const Rational& trunc() const { return trunc_; }
    bool laurent() const { return laurent_; }
    bool is_zero_rep() const { return terms_.empty(); }

    void set_trunc(const Rational& t) {
        trunc_ = t;
        drop_truncated();
    }

    // Accumulate c * t^e, reducing mod p and dropping at trunc.
    void add_term(const Rational& e, long long c) {
        c %= cfg_.p;
        if (c < 0) c += cfg_.p;
        if (c == 0) return;
        if (e >= trunc_) return;
        check_exponent(e);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = (it->second + c) % cfg_.p;
            if (it->second == 0) terms_.erase(it);
        }
    }

    // t-adic valuation of the stored representative. Requires a nonzero rep.
    const Rational& valuation() const {
        if (terms_.empty()) throw PrecisionExceeded("valuation of a zero representation");
        return terms_.begin()->first;
    }

    // Largest power of p appearing in an exponent denominator.
    int max_denom_pow() const {
        int mx = 0;
        for (const auto& [e, c] : terms_) {
            (void)c;
            int k = 0;
            e.denominator_is_p_power(cfg_.p, 62, &k);
            if (k > mx) mx = k;
        }
        return mx;
    }

    long long leading_coeff() const {
        if (terms_.empty()) throw PrecisionExceeded("leading coefficient of a zero representation");
        return terms_.begin()->second;
    }

    friend PerfElem operator+(const PerfElem& a, const PerfElem& b) {
        require_compatible(a, b);
        PerfElem r(a.cfg_, a.laurent_ || b.laurent_);
        r.trunc_ = Rational::min(a.trunc_, b.trunc_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, c);
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    PerfElem operator-() const {
        PerfElem r(cfg_, laurent_);
        r.trunc_ = trunc_;
        for (const auto& [e, c] : terms_) r.add_term(e, cfg_.p - c);
        return r;
    }

    friend PerfElem operator-(const PerfElem& a, const PerfElem& b) { return a + (-b); }

    friend PerfElem operator*(const PerfElem& a, const PerfElem& b) {
        require_compatible(a, b);
        PerfElem r(a.cfg_, a.laurent_ || b.laurent_);
        r.trunc_ = mul_trunc(a, b);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_)
                r.add_term(ea + eb, (ca * cb) % a.cfg_.p);
        return r;
    }

    // Frobenius: exact p-th power, exponents scaled by p. The reliable
    // window scales with it.
    PerfElem pow_p() const {
        PerfElem r(cfg_, laurent_);
        r.trunc_ = trunc_ * Rational(cfg_.p);
        for (const auto& [e, c] : terms_) r.add_term(e * Rational(cfg_.p), c);
        return r;
    }

    // Inverse Frobenius: exponents divided by p (coefficients are fixed since
    // c^p = c in F_p). Output window shrinks to trunc/p. The denominator cap
    // defaults to K_work; teich widens it when running at inflated precision.
    PerfElem root_p(int denom_cap = -1) const {
        if (denom_cap < 0) denom_cap = cfg_.k_work();
        PerfElem r(cfg_, laurent_);
        r.trunc_ = trunc_ / Rational(cfg_.p);
        for (const auto& [e, c] : terms_) {
            Rational er = e / Rational(cfg_.p);
            if (!er.denominator_is_p_power(cfg_.p, denom_cap))
                throw DenominatorOverflow("p-th root needs exponent denominator beyond the cap: t^(" +
                                          er.str() + ")");
            r.add_term(er, c);
        }
        return r;
    }

    PerfElem pow(long long n) const {
        PerfElem acc = constant(cfg_, 1, laurent_);
        acc.trunc_ = Rational::max(cfg_.E, trunc_);
        PerfElem base = *this;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    // alpha(x) = p^(-gamma * v_t(x)); the zero representation only certifies
    // norm <= p^(-gamma * trunc).
    LogNorm norm() const {
        if (terms_.empty()) return LogNorm::at_most(cfg_.gamma * trunc_);
        return LogNorm::exact(cfg_.gamma * valuation());
    }

    // Multiplicative inverse: factor the leading monomial, then a geometric
    // series on the unit part up to the window.
    PerfElem inverse() const {
        if (terms_.empty()) throw NotInvertible("zero representation is not invertible");
        Rational v = valuation();
        if (v.is_positive() && !laurent_)
            throw NotInvertible("positive valuation is not invertible in the integral ring");
        long long c = leading_coeff();
        PerfElem lead_inv = monomial(cfg_, mod_inverse(c, cfg_.p), -v, laurent_);
        if (!(-v).denominator_is_p_power(cfg_.p, cfg_.k_work()))
            throw DenominatorOverflow("inverse exponent outside the lattice");
        // this = c t^v (1 + u) with v_t(u) > 0.
        PerfElem u = (*this) * lead_inv - constant(cfg_, 1, laurent_);
        PerfElem geo = constant(cfg_, 1, laurent_);
        PerfElem pw = constant(cfg_, 1, laurent_);
        if (!u.is_zero_rep()) {
            Rational vu = u.valuation();
            long long steps = ((trunc() - v) / vu).ceil() + 1;
            for (long long i = 0; i < steps; ++i) {
                pw = pw * (-u);
                if (pw.is_zero_rep()) break;
                geo = geo + pw;
            }
        }
        return geo * lead_inv;
    }

    friend bool operator==(const PerfElem& a, const PerfElem& b) {
        return a.laurent_ == b.laurent_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PerfElem& a, const PerfElem& b) { return !(a == b); }

    static void require_compatible(const PerfElem& a, const PerfElem& b) {
        if (!a.cfg_.compatible(b.cfg_))
            throw ConfigError("operands come from different ring configurations");
    }

    static long long mod_inverse(long long a, long long p) {
        long long r = 1, base = a % p, e = p - 2;
        while (e > 0) {
            if (e & 1) r = (r * base) % p;
            base = (base * base) % p;
            e >>= 1;
        }
        return r;
    }

  private:
    // Exponents must have p-power denominators; the K / K_work contract is
    // enforced at the operations that can raise denominators (root_p,
    // frobenius_inv, the parser), not here, because teich legitimately works
    // beyond K_work when run at inflated precision.
    void check_exponent(const Rational& e) const {
        if (!e.denominator_is_p_power(cfg_.p, 62))
            throw DenominatorOverflow("exponent t^(" + e.str() + ") has a non-p-power denominator");
        if (e.is_negative() && !laurent_)
            throw DenominatorOverflow("negative exponent in the integral ring");
    }

    void drop_truncated() {
        auto it = terms_.lower_bound(trunc_);
        terms_.erase(it, terms_.end());
    }

    // a known mod t^Ta, b known mod t^Tb: the product is known mod
    // t^min(va+Tb, vb+Ta), where the valuation lower bound of a zero
    // representation is its trunc.
    static Rational mul_trunc(const PerfElem& a, const PerfElem& b) {
        Rational va = a.terms_.empty() ? a.trunc_ : a.valuation();
        Rational vb = b.terms_.empty() ? b.trunc_ : b.valuation();
        return Rational::min(va + b.trunc_, vb + a.trunc_);
    }

    RingConfig cfg_;
    TermMap terms_;
    Rational trunc_;
    bool laurent_ = false;
};

} // namespace wittlab

#endif
