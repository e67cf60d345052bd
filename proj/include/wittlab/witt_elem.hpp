#ifndef WITTLAB_WITT_ELEM_HPP
#define WITTLAB_WITT_ELEM_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "lognorm.hpp"
#include "perf_elem.hpp"
#include "rational.hpp"

namespace wittlab {

// Truncated Witt vector over the perfection of F_p[t], in the polynomial
// representation: W(R) is the p-adic completion of the union of
// Z_p[T^(1/p^n)] with T = [t], so an element is a sparse polynomial in
// fractional powers of t with coefficients in Z/p^precN. Ring operations are
// plain polynomial arithmetic; the Witt-specific content lives in the
// Teichmueller lift and expansion.
class WittElem {
  public:
    using Coeff = unsigned long long;
    using TermMap = std::map<Rational, Coeff>;

    WittElem() = default;

    explicit WittElem(RingConfig cfg, int precN = -1, bool laurent = false)
        : cfg_(std::move(cfg)), precN_(precN < 0 ? cfg_.N : precN), trunc_(cfg_.E),
          laurent_(laurent) {
        cfg_.check_coeff_range(precN_);
        mod_ = compute_modulus();
    }

    static WittElem zero(const RingConfig& cfg, int precN = -1) { return WittElem(cfg, precN); }

    static WittElem constant(const RingConfig& cfg, long long c, int precN = -1) {
        WittElem w(cfg, precN);
        w.add_term(Rational(0), c % w.modulus());
        return w;
    }

    static WittElem monomial(const RingConfig& cfg, long long c, const Rational& e,
                             int precN = -1, bool laurent = false) {
        WittElem w(cfg, precN, laurent);
        w.add_term(e, c % w.modulus());
        return w;
    }

    static WittElem prime(const RingConfig& cfg, int precN = -1) {
        return constant(cfg, cfg.p, precN);
    }

    // Coefficient-wise naive lift of a residue element.
    static WittElem lift(const PerfElem& x, int precN = -1) {
        WittElem w(x.config(), precN, x.laurent());
        w.trunc_ = x.trunc();
        for (const auto& [e, c] : x.terms()) w.add_term(e, static_cast<Coeff>(c));
        return w;
    }

    const RingConfig& config() const { return cfg_; }
    const TermMap& terms() const { return terms_; }
    int precision() const { return precN_; }
    const Rational& trunc() const { return trunc_; }
    bool laurent() const { return laurent_; }
    bool is_zero_rep() const { return terms_.empty(); }

    Coeff modulus() const { return mod_; }

    void set_trunc(const Rational& t) {
        trunc_ = t;
        auto it = terms_.lower_bound(trunc_);
        terms_.erase(it, terms_.end());
    }

    // Reduce the coefficients to precision n (n <= precN).
    WittElem reduced_precision(int n) const {
        if (n >= precN_) return *this;
        WittElem r(cfg_, n, laurent_);
        r.trunc_ = trunc_;
        for (const auto& [e, c] : terms_) r.add_term(e, c % r.modulus());
        return r;
    }

    void add_term(const Rational& e, Coeff c) {
        Coeff m = modulus();
        c %= m;
        if (c == 0) return;
        if (e >= trunc_) return;
        check_exponent(e);
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second = (it->second + c) % m;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend WittElem operator+(const WittElem& a, const WittElem& b) {
        require_compatible(a, b);
        WittElem r(a.cfg_, std::min(a.precN_, b.precN_), a.laurent_ || b.laurent_);
        r.trunc_ = Rational::min(a.trunc_, b.trunc_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, c);
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    WittElem operator-() const {
        WittElem r(cfg_, precN_, laurent_);
        r.trunc_ = trunc_;
        Coeff m = modulus();
        for (const auto& [e, c] : terms_) r.add_term(e, m - c);
        return r;
    }

    friend WittElem operator-(const WittElem& a, const WittElem& b) { return a + (-b); }

    friend WittElem operator*(const WittElem& a, const WittElem& b) {
        require_compatible(a, b);
        WittElem r(a.cfg_, std::min(a.precN_, b.precN_), a.laurent_ || b.laurent_);
        r.trunc_ = mul_trunc(a, b);
        Coeff m = r.modulus();
        if (a.terms_.size() * b.terms_.size() > 4096 && dense_mul(a, b, m, r)) return r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                unsigned __int128 prod = static_cast<unsigned __int128>(ca % m) * (cb % m);
                r.add_term(ea + eb, static_cast<Coeff>(prod % m));
            }
        return r;
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

    WittElem pow(long long n) const {
        WittElem acc = constant(cfg_, 1, precN_);
        acc.laurent_ = laurent_;
        // The unit accumulator is exact; give it at least this element's
        // window so it never forces drops below it.
        acc.trunc_ = Rational::max(cfg_.E, trunc_);
        WittElem base = *this;
        while (n > 0) {
            if (n & 1) acc = acc * base;
            base = base * base;
            n >>= 1;
        }
        return acc;
    }

    // Reduction mod p, a valid PerfElem.
    PerfElem reduce_mod_p() const {
        PerfElem x(cfg_, laurent_);
        x.set_trunc(trunc_);
        for (const auto& [e, c] : terms_) x.add_term(e, static_cast<long long>(c % cfg_.p));
        return x;
    }

    // Multiplication by p: gains one digit of precision.
    WittElem times_p() const {
        cfg_.check_coeff_range(precN_ + 1);
        WittElem r(cfg_, precN_ + 1, laurent_);
        r.trunc_ = trunc_;
        for (const auto& [e, c] : terms_)
            r.add_term(e, static_cast<Coeff>(static_cast<unsigned __int128>(c) * cfg_.p %
                                             r.modulus()));
        return r;
    }

    // Exact division by p; the representative must be coefficient-wise
    // divisible. Precision drops by one digit.
    WittElem divided_by_p() const {
        if (precN_ < 1) throw InsufficientPrecision("no precision left for division by p");
        WittElem r(cfg_, precN_ - 1, laurent_);
        r.trunc_ = trunc_;
        for (const auto& [e, c] : terms_) {
            if (c % cfg_.p != 0)
                throw NotDivisible("element is not divisible by p at t^(" + e.str() + ")");
            r.add_term(e, c / cfg_.p);
        }
        return r;
    }

    // Witt vector Frobenius: lifts the p-power map on R; exponents scale by
    // p, coefficients are fixed.
    WittElem frobenius() const {
        WittElem r(cfg_, precN_, laurent_);
        r.trunc_ = trunc_ * Rational(cfg_.p);
        for (const auto& [e, c] : terms_) r.add_term(e * Rational(cfg_.p), c);
        return r;
    }

    WittElem frobenius_inv() const {
        WittElem r(cfg_, precN_, laurent_);
        r.trunc_ = trunc_ / Rational(cfg_.p);
        for (const auto& [e, c] : terms_) {
            Rational er = e / Rational(cfg_.p);
            if (!er.denominator_is_p_power(cfg_.p, cfg_.k_work()))
                throw DenominatorOverflow("Frobenius inverse leaves the exponent lattice");
            r.add_term(er, c);
        }
        return r;
    }

    friend bool operator==(const WittElem& a, const WittElem& b) {
        return a.laurent_ == b.laurent_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const WittElem& a, const WittElem& b) { return !(a == b); }

    static void require_compatible(const WittElem& a, const WittElem& b) {
        if (!a.cfg_.compatible(b.cfg_))
            throw ConfigError("operands come from different ring configurations");
    }

  private:
    void check_exponent(const Rational& e) const {
        if (!e.denominator_is_p_power(cfg_.p, 62))
            throw DenominatorOverflow("exponent t^(" + e.str() + ") has a non-p-power denominator");
        if (e.is_negative() && !laurent_)
            throw DenominatorOverflow("negative exponent outside the Laurent ring");
    }

    Coeff compute_modulus() const {
        __int128 m = 1;
        for (int i = 0; i < precN_; ++i) m *= cfg_.p;
        return static_cast<Coeff>(m);
    }

    // Convolution over a shared integer offset lattice; the big Teichmueller
    // lifts produced at inflated precision live on dense arithmetic
    // progressions where map-based multiplication is far too slow.
    static bool dense_mul(const WittElem& a, const WittElem& b, Coeff m, WittElem& r) {
        int ka = a.max_denom_pow(), kb = b.max_denom_pow();
        long long D;
        try {
            D = pow_ll(a.cfg_.p, std::max(ka, kb));
        } catch (const ArithmeticOverflow&) {
            return false;
        }
        const Rational &mina = a.terms_.begin()->first, &maxa = a.terms_.rbegin()->first;
        const Rational &minb = b.terms_.begin()->first, &maxb = b.terms_.rbegin()->first;
        Rational spanA = (maxa - mina) * Rational(D), spanB = (maxb - minb) * Rational(D);
        if (!spanA.is_integer() || !spanB.is_integer()) return false;
        long long sa = spanA.num(), sb = spanB.num();
        if (sa < 0 || sb < 0 || sa + sb + 1 > (1 << 22)) return false;
        std::vector<Coeff> va(static_cast<std::size_t>(sa) + 1, 0),
            vb(static_cast<std::size_t>(sb) + 1, 0);
        std::vector<long long> ia, ib;
        for (const auto& [e, c] : a.terms_) {
            long long off = ((e - mina) * Rational(D)).num();
            va[static_cast<std::size_t>(off)] = c % m;
            ia.push_back(off);
        }
        for (const auto& [e, c] : b.terms_) {
            long long off = ((e - minb) * Rational(D)).num();
            vb[static_cast<std::size_t>(off)] = c % m;
            ib.push_back(off);
        }
        std::vector<Coeff> out(static_cast<std::size_t>(sa + sb) + 1, 0);
        for (long long i : ia) {
            Coeff ca = va[static_cast<std::size_t>(i)];
            for (long long j : ib) {
                unsigned __int128 prod =
                    static_cast<unsigned __int128>(ca) * vb[static_cast<std::size_t>(j)] +
                    out[static_cast<std::size_t>(i + j)];
                out[static_cast<std::size_t>(i + j)] = static_cast<Coeff>(prod % m);
            }
        }
        Rational base = mina + minb;
        for (long long k = 0; k <= sa + sb; ++k)
            if (out[static_cast<std::size_t>(k)])
                r.add_term(base + Rational(k, D), out[static_cast<std::size_t>(k)]);
        return true;
    }

    static Rational mul_trunc(const WittElem& a, const WittElem& b) {
        Rational va = a.terms_.empty() ? a.trunc_ : a.terms_.begin()->first;
        Rational vb = b.terms_.empty() ? b.trunc_ : b.terms_.begin()->first;
        va = Rational::min(va, a.trunc_);
        vb = Rational::min(vb, b.trunc_);
        return Rational::min(va + b.trunc_, vb + a.trunc_);
    }

    RingConfig cfg_;
    TermMap terms_;
    int precN_ = 0;
    Coeff mod_ = 1;
    Rational trunc_;
    bool laurent_ = false;
};

// Teichmueller lift of x mod p^precN, computed as the p^(N-1)-th power of a
// naive lift of the p^(N-1)-th root of x. The binomial congruence makes the
// result independent of the choice of lift at this precision.
inline WittElem teich(const PerfElem& x, int precN = -1) {
    const RingConfig& cfg = x.config();
    if (precN < 0) precN = cfg.N;
    if (x.is_zero_rep()) {
        WittElem z(cfg, precN, x.laurent());
        z.set_trunc(x.trunc());
        return z;
    }
    PerfElem root = x;
    // The N-1 intermediate roots raise the input's denominators by exactly
    // p^(N-1); for base-ring inputs this is the K_work cap.
    int cap = x.max_denom_pow() + precN - 1;
    for (int i = 0; i + 1 < precN; ++i) root = root.root_p(cap);
    WittElem w = WittElem::lift(root, precN);
    // The power chain is exact: every intermediate exponent stays below the
    // input's own maximum, so it runs at the input window and nothing drops.
    w.set_trunc(x.trunc());
    for (int i = 0; i + 1 < precN; ++i) {
        w = w.pow(cfg.p);
        w.set_trunc(x.trunc());
    }
    return w;
}

// Digits of the unique representation w = sum p^i [x_i].
struct TeichDigits {
    std::vector<PerfElem> digits; // digit i is reliable given input precision >= i+1
    int precN = 0;

    const PerfElem& operator[](std::size_t i) const { return digits[i]; }
    std::size_t size() const { return digits.size(); }
};

inline TeichDigits teich_expand(const WittElem& w) {
    TeichDigits out;
    out.precN = w.precision();
    WittElem cur = w;
    for (int i = 0; i < out.precN; ++i) {
        PerfElem d = cur.reduce_mod_p();
        out.digits.push_back(d);
        if (i + 1 < out.precN)
            cur = (cur - teich(d, cur.precision())).divided_by_p();
    }
    return out;
}

// p-derivation delta(w) = (phi(w) - w^p)/p; output precision drops by one.
inline WittElem p_derivation(const WittElem& w) {
    if (w.precision() < 2)
        throw InsufficientPrecision("p-derivation needs precision >= 2");
    return (w.frobenius() - w.pow(w.config().p)).divided_by_p();
}

// Inverse of a unit: reduction mod p must be invertible in R; quadratic
// lifting doubles the p-adic accuracy each round.
inline WittElem witt_inv(const WittElem& w) {
    const RingConfig& cfg = w.config();
    PerfElem wbar = w.reduce_mod_p();
    if (wbar.is_zero_rep()) throw NotInvertible("residue of the element is zero");
    Rational v = wbar.valuation();
    if (!v.is_zero()) {
        if (!w.laurent())
            throw NotInvertible("residue has nonzero valuation; not a unit of W(R)");
        // Factor a Teichmueller monomial and invert the unit part:
        // w = [c t^v] * u with u of residue valuation 0, so
        // w^{-1} = u^{-1} [c^{-1} t^{-v}].
        PerfElem mono_inv_bar =
            PerfElem::monomial(cfg, PerfElem::mod_inverse(wbar.leading_coeff(), cfg.p), -v, true);
        WittElem mono_inv = teich(mono_inv_bar, w.precision());
        WittElem unit = w * mono_inv;
        return witt_inv(unit) * mono_inv;
    }
    WittElem z = WittElem::lift(wbar.inverse(), w.precision());
    WittElem two = WittElem::constant(cfg, 2, w.precision());
    int rounds = 1;
    while ((1 << rounds) < w.precision() + 1) ++rounds;
    for (int i = 0; i < rounds; ++i) z = z * (two - w * z);
    return z;
}

} // namespace wittlab

#endif
