#ifndef WITTLAB_WITT_COORD_HPP
#define WITTLAB_WITT_COORD_HPP

#include <map>
#include <vector>

#include "config.hpp"
#include "errors.hpp"
#include "perf_elem.hpp"
#include "witt_elem.hpp"

namespace wittlab {

// Independent Witt arithmetic in the classical coordinate parametrization,
// used to cross-validate the polynomial representation. The structure
// polynomials are generated by the exact integer ghost-component recursion
//     W_n(phi_0,...,phi_n) = Phi(W_n(X), W_n(Y)),
// then reduced mod p for evaluation. Exactness of every division by p^n is
// itself a correctness check on the generation.

namespace coordpoly {

// Sparse integer polynomial in 2*(n+1) variables X_0..X_n, Y_0..Y_n.
// Monomial key: exponent vector (X exponents then Y exponents).
using Mono = std::vector<unsigned char>;
using ZPoly = std::map<Mono, long long>;

inline void add_in(ZPoly& a, const Mono& m, long long c) {
    if (c == 0) return;
    auto it = a.find(m);
    if (it == a.end()) {
        a.emplace(m, c);
    } else {
        long long s;
        if (__builtin_add_overflow(it->second, c, &s))
            throw SizeLimit("structure polynomial coefficient overflow");
        if (s == 0)
            a.erase(it);
        else
            it->second = s;
    }
}

inline ZPoly add(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (const auto& [m, c] : b) add_in(r, m, c);
    return r;
}

inline ZPoly sub(const ZPoly& a, const ZPoly& b) {
    ZPoly r = a;
    for (const auto& [m, c] : b) add_in(r, m, -c);
    return r;
}

inline ZPoly mul(const ZPoly& a, const ZPoly& b, std::size_t term_limit) {
    ZPoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            Mono m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                unsigned v = static_cast<unsigned>(ma[i]) + mb[i];
                if (v > 255) throw SizeLimit("structure polynomial degree overflow");
                m[i] = static_cast<unsigned char>(v);
            }
            long long c;
            if (__builtin_mul_overflow(ca, cb, &c))
                throw SizeLimit("structure polynomial coefficient overflow");
            add_in(r, m, c);
            if (r.size() > term_limit)
                throw SizeLimit("structure polynomial term count exceeds the configured bound");
        }
    return r;
}

inline ZPoly scalar_mul(const ZPoly& a, long long s) {
    ZPoly r;
    for (const auto& [m, c] : a) {
        long long v;
        if (__builtin_mul_overflow(c, s, &v))
            throw SizeLimit("structure polynomial coefficient overflow");
        r.emplace(m, v);
    }
    return r;
}

inline ZPoly exact_div(const ZPoly& a, long long d) {
    ZPoly r;
    for (const auto& [m, c] : a) {
        if (c % d != 0)
            throw SizeLimit("ghost recursion division is not exact; generation is broken");
        r.emplace(m, c / d);
    }
    return r;
}

} // namespace coordpoly

enum class WittOp { Add, Sub, Mul };

// Structure polynomials phi_0..phi_{N-1} for one binary operation, stored
// both over Z (for symbolic checks) and reduced mod p (for evaluation).
struct StructurePolySet {
    long long p = 0;
    int N = 0;
    WittOp op = WittOp::Add;
    std::vector<coordpoly::ZPoly> integer_polys;
    std::vector<coordpoly::ZPoly> mod_p_polys;
};

inline StructurePolySet gen_structure_polys(long long p, int N, WittOp op,
                                            std::size_t term_limit = 2000000) {
    if (N > 4) throw SizeLimit("structure polynomials are limited to N <= 4");
    using namespace coordpoly;
    const std::size_t nv = 2 * static_cast<std::size_t>(N);
    [[maybe_unused]] auto var = [&](std::size_t idx) {
        Mono m(nv, 0);
        m[idx] = 1;
        ZPoly r;
        r.emplace(m, 1);
        return r;
    };
    auto var_pow = [&](std::size_t idx, long long e) {
        Mono m(nv, 0);
        if (e > 255) throw SizeLimit("structure polynomial degree overflow");
        m[idx] = static_cast<unsigned char>(e);
        ZPoly r;
        r.emplace(m, 1);
        return r;
    };

    // Ghost polynomials W_n(X) = sum p^i X_i^(p^(n-i)).
    auto ghost = [&](int n, bool ys) {
        ZPoly w;
        for (int i = 0; i <= n; ++i) {
            long long pi = pow_ll(p, i);
            long long e = pow_ll(p, n - i);
            ZPoly term = scalar_mul(var_pow((ys ? static_cast<std::size_t>(N) : 0) + i, e), pi);
            w = add(w, term);
        }
        return w;
    };

    StructurePolySet set;
    set.p = p;
    set.N = N;
    set.op = op;
    for (int n = 0; n < N; ++n) {
        ZPoly wx = ghost(n, false);
        ZPoly wy = ghost(n, true);
        ZPoly target;
        switch (op) {
            case WittOp::Add: target = add(wx, wy); break;
            case WittOp::Sub: target = sub(wx, wy); break;
            case WittOp::Mul: target = mul(wx, wy, term_limit); break;
        }
        // target - sum_{i<n} p^i phi_i^(p^(n-i)), then exact division by p^n.
        for (int i = 0; i < n; ++i) {
            ZPoly piece = set.integer_polys[i];
            long long e = pow_ll(p, n - i);
            ZPoly pw = piece;
            for (long long k = 1; k < e; ++k) pw = mul(pw, piece, term_limit);
            target = sub(target, scalar_mul(pw, pow_ll(p, i)));
        }
        set.integer_polys.push_back(exact_div(target, pow_ll(p, n)));

        ZPoly mp;
        for (const auto& [m, c] : set.integer_polys.back()) {
            long long r = c % p;
            if (r < 0) r += p;
            if (r != 0) mp.emplace(m, r);
        }
        set.mod_p_polys.push_back(std::move(mp));
    }
    return set;
}

// Witt vector in the classical coordinate parametrization: (x_0,...,x_{N-1})
// represents sum p^i [x_i^(p^-i)].
struct WittCoordElem {
    std::vector<PerfElem> coords;

    int length() const { return static_cast<int>(coords.size()); }
};

inline PerfElem eval_structure_poly(const coordpoly::ZPoly& poly, const WittCoordElem& a,
                                    const WittCoordElem& b, const RingConfig& cfg) {
    int N = a.length();
    PerfElem acc = PerfElem::zero(cfg);
    for (const auto& [m, c] : poly) {
        PerfElem term = PerfElem::constant(cfg, c % cfg.p);
        for (int i = 0; i < N; ++i) {
            if (m[static_cast<std::size_t>(i)])
                term = term * a.coords[static_cast<std::size_t>(i)].pow(m[static_cast<std::size_t>(i)]);
            if (m[static_cast<std::size_t>(N + i)])
                term = term * b.coords[static_cast<std::size_t>(i)].pow(m[static_cast<std::size_t>(N + i)]);
        }
        acc = acc + term;
    }
    return acc;
}

class WittOracle {
  public:
    WittOracle(RingConfig cfg) : cfg_(std::move(cfg)) {
        add_ = gen_structure_polys(cfg_.p, cfg_.N, WittOp::Add);
        sub_ = gen_structure_polys(cfg_.p, cfg_.N, WittOp::Sub);
        mul_ = gen_structure_polys(cfg_.p, cfg_.N, WittOp::Mul);
    }

    const RingConfig& config() const { return cfg_; }
    const StructurePolySet& polys(WittOp op) const {
        switch (op) {
            case WittOp::Add: return add_;
            case WittOp::Sub: return sub_;
            default: return mul_;
        }
    }

    WittCoordElem apply(WittOp op, const WittCoordElem& a, const WittCoordElem& b) const {
        const StructurePolySet& set = polys(op);
        WittCoordElem r;
        for (int n = 0; n < cfg_.N; ++n) {
            PerfElem c = eval_structure_poly(set.mod_p_polys[static_cast<std::size_t>(n)], a, b, cfg_);
            c.set_trunc(Rational::min(c.trunc(), cfg_.E)); // coordinates live in R_E
            r.coords.push_back(std::move(c));
        }
        return r;
    }

    WittCoordElem coords_add(const WittCoordElem& a, const WittCoordElem& b) const {
        return apply(WittOp::Add, a, b);
    }
    WittCoordElem coords_sub(const WittCoordElem& a, const WittCoordElem& b) const {
        return apply(WittOp::Sub, a, b);
    }
    WittCoordElem coords_mul(const WittCoordElem& a, const WittCoordElem& b) const {
        return apply(WittOp::Mul, a, b);
    }

  private:
    RingConfig cfg_;
    StructurePolySet add_, sub_, mul_;
};

// Coordinate x_i is the i-th Teichmueller digit raised to the p^i-th power.
inline WittCoordElem bridge_to_coords(const WittElem& w) {
    TeichDigits d = teich_expand(w);
    WittCoordElem r;
    for (int i = 0; i < d.precN; ++i) {
        PerfElem c = d[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) c = c.pow_p();
        // Coordinates live in the base window regardless of digit index.
        c.set_trunc(Rational::min(c.trunc(), w.config().E));
        r.coords.push_back(c);
    }
    return r;
}

inline WittElem bridge_from_coords(const WittCoordElem& c, const RingConfig& cfg) {
    WittElem acc = WittElem::zero(cfg, c.length());
    for (int i = 0; i < c.length(); ++i) {
        PerfElem digit = c.coords[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k) digit = digit.root_p();
        WittElem term = teich(digit, c.length());
        for (int k = 0; k < i; ++k) term = term.times_p().reduced_precision(c.length());
        acc = acc + term;
    }
    return acc;
}

} // namespace wittlab

#endif
