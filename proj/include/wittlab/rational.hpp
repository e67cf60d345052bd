#ifndef WITTLAB_RATIONAL_HPP
#define WITTLAB_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>

#include "errors.hpp"

namespace wittlab {

namespace detail {

inline long long checked_ll(__int128 v, const char* ctx) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw ArithmeticOverflow(std::string("integer overflow in ") + ctx);
    return static_cast<long long>(v);
}

} // namespace detail

// Exact rational with 64-bit numerator/denominator and overflow-checked
// arithmetic. Big enough for every exponent and log-scale norm value the
// library handles; overflow throws instead of wrapping.
class Rational {
  public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }
    bool is_negative() const { return num_ < 0; }
    bool is_positive() const { return num_ > 0; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make_reduced(n, d);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make_reduced(n, d);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make_reduced(n, d);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0)
            throw ArithmeticOverflow("rational division by zero");
        __int128 n = static_cast<__int128>(a.num_) * b.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.num_;
        return make_reduced(n, d);
    }
    Rational operator-() const { return Rational(-num_, den_); }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Largest integer <= value.
    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }
    long long ceil() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ > 0) ++q;
        return q;
    }

    // True iff den divides p^max_pow; reports the exact power needed.
    bool denominator_is_p_power(long long p, int max_pow, int* pow_out = nullptr) const {
        long long d = den_;
        int k = 0;
        while (d > 1) {
            if (d % p != 0 || k >= max_pow) return false;
            d /= p;
            ++k;
        }
        if (pow_out) *pow_out = k;
        return true;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
    static Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

  private:
    static Rational make_reduced(__int128 n, __int128 d) {
        if (d == 0) throw ArithmeticOverflow("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a != 0) { n /= a; d /= a; }
        Rational r;
        r.num_ = detail::checked_ll(n, "rational numerator");
        r.den_ = detail::checked_ll(d, "rational denominator");
        return r;
    }

    void normalize() {
        *this = make_reduced(num_, den_);
    }

    long long num_;
    long long den_;
};

// p^k as a checked 64-bit integer.
inline long long pow_ll(long long base, int exp) {
    __int128 r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > static_cast<__int128>(INT64_MAX))
            throw ArithmeticOverflow("power overflow");
    }
    return static_cast<long long>(r);
}

} // namespace wittlab

#endif
