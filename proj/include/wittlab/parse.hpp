#ifndef WITTLAB_PARSE_HPP
#define WITTLAB_PARSE_HPP

#include <cctype>
#include <string>

#include "errors.hpp"
#include "perf_elem.hpp"
#include "rational.hpp"
#include "witt_elem.hpp"

namespace wittlab {

// Element grammar shared by the CLI and the test fixtures.
//
//   perf ::= ['-'] term (('+'|'-') term)*
//   term :: = factor ('*' factor)*
//   factor ::= uint | 't' ['^' exp] | '(' perf ')'
//   exp  ::= ['('] ['-'] uint ['/' uint] [')']
//
// Witt elements accept the same shape plus the atoms `p`, `p^k`, and
// Teichmueller brackets `[ perf ]`, e.g. "2 - [t]" or "[1+t] + p*[t^(1/2)]".
// Everything is whitespace-insensitive. Canonical output re-parses to an
// identical value.
namespace parse_detail {

class Cursor {
  public:
    explicit Cursor(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }

    long long parse_uint() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected a number");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v < 0) fail("number too large");
            ++pos_;
        }
        return v;
    }

    // Exponent: optional parens, optional sign, optional /denominator.
    Rational parse_exponent() {
        bool parens = accept('(');
        bool neg = accept('-');
        long long n = parse_uint();
        long long d = 1;
        if (accept('/')) d = parse_uint();
        if (parens) expect(')');
        return Rational(neg ? -n : n, d);
    }

  private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace parse_detail

inline PerfElem parse_perf_expr(parse_detail::Cursor& cur, const RingConfig& cfg, bool laurent);

inline PerfElem parse_perf_factor(parse_detail::Cursor& cur, const RingConfig& cfg, bool laurent) {
    if (cur.accept('(')) {
        PerfElem inner = parse_perf_expr(cur, cfg, laurent);
        cur.expect(')');
        return inner;
    }
    char c = cur.peek();
    if (c == 't') {
        cur.accept('t');
        Rational e(1);
        if (cur.accept('^')) e = cur.parse_exponent();
        if (!e.denominator_is_p_power(cfg.p, cfg.K))
            throw ParseError("exponent t^(" + e.str() + ") outside the (1/p^K) lattice");
        if (e.is_negative() && !laurent)
            throw ParseError("negative exponent t^(" + e.str() + ") outside the Laurent ring");
        return PerfElem::monomial(cfg, 1, e, laurent);
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
        return PerfElem::constant(cfg, cur.parse_uint() % cfg.p, laurent);
    cur.fail("expected a residue-ring term");
}

inline PerfElem parse_perf_term(parse_detail::Cursor& cur, const RingConfig& cfg, bool laurent) {
    PerfElem r = parse_perf_factor(cur, cfg, laurent);
    while (cur.accept('*')) r = r * parse_perf_factor(cur, cfg, laurent);
    return r;
}

inline PerfElem parse_perf_expr(parse_detail::Cursor& cur, const RingConfig& cfg, bool laurent) {
    bool neg = cur.accept('-');
    PerfElem r = parse_perf_term(cur, cfg, laurent);
    if (neg) r = -r;
    for (;;) {
        if (cur.accept('+'))
            r = r + parse_perf_term(cur, cfg, laurent);
        else if (cur.accept('-'))
            r = r - parse_perf_term(cur, cfg, laurent);
        else
            break;
    }
    return r;
}

inline PerfElem parse_perf(const std::string& s, const RingConfig& cfg, bool laurent = false) {
    parse_detail::Cursor cur(s);
    PerfElem r = parse_perf_expr(cur, cfg, laurent);
    if (!cur.done()) cur.fail("trailing input");
    return r;
}

inline WittElem parse_witt_expr(parse_detail::Cursor& cur, const RingConfig& cfg, int precN,
                                bool laurent);

inline WittElem parse_witt_factor(parse_detail::Cursor& cur, const RingConfig& cfg, int precN,
                                  bool laurent) {
    if (cur.accept('(')) {
        WittElem inner = parse_witt_expr(cur, cfg, precN, laurent);
        cur.expect(')');
        return inner;
    }
    if (cur.accept('[')) {
        PerfElem f = parse_perf_expr(cur, cfg, laurent);
        cur.expect(']');
        return teich(f, precN);
    }
    char c = cur.peek();
    if (c == 'p') {
        cur.accept('p');
        long long k = 1;
        if (cur.accept('^')) k = cur.parse_uint();
        WittElem w = WittElem::constant(cfg, 1, precN);
        for (long long i = 0; i < k; ++i) w = w.times_p().reduced_precision(precN);
        return w;
    }
    if (c == 't') {
        cur.accept('t');
        Rational e(1);
        if (cur.accept('^')) e = cur.parse_exponent();
        if (!e.denominator_is_p_power(cfg.p, cfg.K))
            throw ParseError("exponent t^(" + e.str() + ") outside the (1/p^K) lattice");
        if (e.is_negative() && !laurent)
            throw ParseError("negative exponent t^(" + e.str() + ") outside the Laurent ring");
        return WittElem::monomial(cfg, 1, e, precN, laurent);
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
        return WittElem::constant(cfg, cur.parse_uint(), precN);
    cur.fail("expected a Witt-ring term");
}

inline WittElem parse_witt_term(parse_detail::Cursor& cur, const RingConfig& cfg, int precN,
                                bool laurent) {
    WittElem r = parse_witt_factor(cur, cfg, precN, laurent);
    while (cur.accept('*')) r = r * parse_witt_factor(cur, cfg, precN, laurent);
    return r;
}

inline WittElem parse_witt_expr(parse_detail::Cursor& cur, const RingConfig& cfg, int precN,
                                bool laurent) {
    bool neg = cur.accept('-');
    WittElem r = parse_witt_term(cur, cfg, precN, laurent);
    if (neg) r = -r;
    for (;;) {
        if (cur.accept('+'))
            r = r + parse_witt_term(cur, cfg, precN, laurent);
        else if (cur.accept('-'))
            r = r - parse_witt_term(cur, cfg, precN, laurent);
        else
            break;
    }
    return r;
}

inline WittElem parse_witt(const std::string& s, const RingConfig& cfg, int precN = -1,
                           bool laurent = false) {
    parse_detail::Cursor cur(s);
    WittElem r = parse_witt_expr(cur, cfg, precN < 0 ? cfg.N : precN, laurent);
    if (!cur.done()) cur.fail("trailing input");
    return r;
}

// ---- canonical printing ----

inline std::string format_exponent(const Rational& e) {
    if (e == Rational(1)) return "t";
    if (e.is_integer() && !e.is_negative()) return "t^" + e.str();
    return "t^(" + e.str() + ")";
}

inline std::string to_string(const PerfElem& x) {
    if (x.is_zero_rep()) return "0";
    std::string out;
    for (const auto& [e, c] : x.terms()) {
        if (!out.empty()) out += " + ";
        if (e.is_zero())
            out += std::to_string(c);
        else if (c == 1)
            out += format_exponent(e);
        else
            out += std::to_string(c) + "*" + format_exponent(e);
    }
    return out;
}

// Polynomial form: coefficients in 1..p^precN-1.
inline std::string to_string(const WittElem& w) {
    if (w.is_zero_rep()) return "0";
    std::string out;
    for (const auto& [e, c] : w.terms()) {
        if (!out.empty()) out += " + ";
        if (e.is_zero())
            out += std::to_string(c);
        else if (c == 1)
            out += format_exponent(e);
        else
            out += std::to_string(c) + "*" + format_exponent(e);
    }
    return out;
}

// Teichmueller form: [f0] + p*[f1] + p^2*[f2].
inline std::string to_teich_string(const WittElem& w) {
    TeichDigits d = teich_expand(w);
    std::string out;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i].is_zero_rep()) continue;
        if (!out.empty()) out += " + ";
        if (i == 0)
            out += "[" + to_string(d[i]) + "]";
        else if (i == 1)
            out += "p*[" + to_string(d[i]) + "]";
        else
            out += "p^" + std::to_string(i) + "*[" + to_string(d[i]) + "]";
    }
    return out.empty() ? "0" : out;
}

// Rational in log scale, or "inf".
inline Rational parse_rational(const std::string& s) {
    parse_detail::Cursor cur(s);
    Rational r = cur.parse_exponent();
    if (!cur.done()) cur.fail("trailing input");
    return r;
}

} // namespace wittlab

#endif
