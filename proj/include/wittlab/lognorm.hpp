#ifndef WITTLAB_LOGNORM_HPP
#define WITTLAB_LOGNORM_HPP

#include <string>

#include "errors.hpp"
#include "rational.hpp"

namespace wittlab {

// A norm value in -log_p scale: the represented norm is p^(-value), with
// value = +infinity encoding norm zero. The flag records whether the value
// is exact or only an upper bound on the norm (lower bound on the log),
// which is what t- or p-truncation can certify.
//
// Every predicate either decides from the available information or throws
// PrecisionExceeded; nothing guesses.
class LogNorm {
  public:
    enum class Kind { Exact, AtMost };

    LogNorm() : kind_(Kind::Exact), infinite_(true) {}

    static LogNorm exact(const Rational& v) {
        LogNorm n;
        n.kind_ = Kind::Exact;
        n.infinite_ = false;
        n.v_ = v;
        return n;
    }
    // Norm is exactly zero (log = +infinity).
    static LogNorm zero() { return LogNorm(); }
    // Norm is <= p^(-v); the log value is >= v but otherwise unknown.
    static LogNorm at_most(const Rational& v) {
        LogNorm n;
        n.kind_ = Kind::AtMost;
        n.infinite_ = false;
        n.v_ = v;
        return n;
    }

    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_at_most() const { return kind_ == Kind::AtMost; }
    bool is_zero() const { return kind_ == Kind::Exact && infinite_; }
    bool is_infinite() const { return infinite_; }

    const Rational& log_value() const {
        if (infinite_) throw PrecisionExceeded("log value of a zero norm is infinite");
        return v_;
    }

    // Norm multiplication = log addition. AtMost is absorbing, zero is absorbing.
    friend LogNorm operator+(const LogNorm& a, const LogNorm& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        if (a.infinite_ || b.infinite_) return zero();
        Rational s = a.v_ + b.v_;
        if (a.kind_ == Kind::AtMost || b.kind_ == Kind::AtMost) return at_most(s);
        return exact(s);
    }

    // Scale the log value by a nonnegative rational (norm power).
    LogNorm scaled(const Rational& c) const {
        if (infinite_) return *this;
        LogNorm n = *this;
        n.v_ = v_ * c;
        return n;
    }

    LogNorm shifted(const Rational& d) const {
        if (infinite_) return *this;
        LogNorm n = *this;
        n.v_ = v_ + d;
        return n;
    }

    // min in log scale = max of the two norms.
    static LogNorm log_min(const LogNorm& a, const LogNorm& b) {
        if (a.infinite_) return b;
        if (b.infinite_) return a;
        if (a.kind_ == Kind::Exact && b.kind_ == Kind::Exact)
            return exact(Rational::min(a.v_, b.v_));
        if (a.kind_ == Kind::Exact) {
            // b only known to be >= b.v_.
            if (a.v_ <= b.v_) return a;
            return at_most(b.v_);
        }
        if (b.kind_ == Kind::Exact) return log_min(b, a);
        return at_most(Rational::min(a.v_, b.v_));
    }

    // Cap exactness at a threshold: values at or beyond thr are only
    // certified as "norm <= p^(-thr)".
    LogNorm capped(const Rational& thr) const {
        if (infinite_) return at_most(thr);
        if (v_ >= thr) return at_most(thr);
        if (kind_ == Kind::AtMost)
            return *this; // bound already below the cap; keep it
        return *this;
    }

    // True iff the information certifies log >= c (norm <= p^(-c)).
    bool log_ge(const Rational& c) const {
        if (infinite_) return true;
        return v_ >= c; // holds for Exact, and AtMost guarantees >= v_
    }

    // Decide log >= c or throw.
    bool decide_log_ge(const Rational& c) const {
        if (infinite_) return true;
        if (kind_ == Kind::Exact) return v_ >= c;
        if (v_ >= c) return true;
        throw PrecisionExceeded("cannot compare an AtMost norm value p^-(" + v_.str() +
                                ") against p^-(" + c.str() + ")");
    }

    // Decide strict log > c or throw.
    bool decide_log_gt(const Rational& c) const {
        if (infinite_) return true;
        if (kind_ == Kind::Exact) return v_ > c;
        if (v_ > c) return true;
        throw PrecisionExceeded("cannot strictly compare an AtMost norm value");
    }

    // Exact equality of two decided values; throws when undecidable.
    static bool decide_equal(const LogNorm& a, const LogNorm& b) {
        if (a.is_zero() && b.is_zero()) return true;
        if (a.kind_ == Kind::Exact && b.kind_ == Kind::Exact && !a.infinite_ && !b.infinite_)
            return a.v_ == b.v_;
        if (a.kind_ == Kind::Exact && !a.infinite_ && b.infinite_) return false;
        if (b.kind_ == Kind::Exact && !b.infinite_ && a.infinite_) return false;
        // One side is only a bound: equality is decidable only negatively.
        const LogNorm& bound = a.kind_ == Kind::AtMost ? a : b;
        const LogNorm& other = a.kind_ == Kind::AtMost ? b : a;
        if (other.kind_ == Kind::Exact && !other.infinite_ && other.v_ < bound.v_) return false;
        throw PrecisionExceeded("norm equality undecidable at working precision");
    }

    // Both values certify "zero at threshold thr".
    bool is_zero_at(const Rational& thr) const { return log_ge(thr); }

    std::string str() const {
        if (is_zero()) return "0";
        if (kind_ == Kind::AtMost) return "<=p^-(" + v_.str() + ")";
        return "p^-(" + v_.str() + ")";
    }

    friend bool operator==(const LogNorm& a, const LogNorm& b) {
        return a.kind_ == b.kind_ && a.infinite_ == b.infinite_ &&
               (a.infinite_ || a.v_ == b.v_);
    }
    friend bool operator!=(const LogNorm& a, const LogNorm& b) { return !(a == b); }

  private:
    Kind kind_;
    bool infinite_ = false;
    Rational v_;
};

} // namespace wittlab

#endif
