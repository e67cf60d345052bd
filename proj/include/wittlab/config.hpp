#ifndef WITTLAB_CONFIG_HPP
#define WITTLAB_CONFIG_HPP

#include "errors.hpp"
#include "rational.hpp"

namespace wittlab {

// Working parameters shared by every element:
//   p      prime
//   N      p-adic precision (coefficients live in Z/p^N)
//   E      t-adic truncation exponent (terms at exponent >= E are dropped)
//   K      exponent denominators divide p^K
//   gamma  norm normalization: |t| = p^(-gamma)
struct RingConfig {
    long long p = 2;
    int N = 3;
    Rational E = Rational(8);
    int K = 3;
    Rational gamma = Rational(1);

    // teich needs N-1 extra root extractions on intermediate values.
    int k_work() const { return K + N - 1; }

    void validate() const {
        if (p < 2) throw ConfigError("p must be >= 2");
        for (long long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw ConfigError("p must be prime");
        if (N < 1) throw ConfigError("N must be >= 1");
        if (!E.is_positive()) throw ConfigError("E must be > 0");
        if (K < 0) throw ConfigError("K must be >= 0");
        if (!gamma.is_positive()) throw ConfigError("gamma must be > 0");
        pow_ll(p, k_work());       // exponent lattice must be representable
        check_coeff_range(N + 4);  // leave room for modest internal inflation
    }

    // Coefficient modulus p^prec must fit in 64 bits (checked again wherever
    // precision is inflated beyond N).
    void check_coeff_range(int prec) const {
        __int128 m = 1;
        for (int i = 0; i < prec; ++i) {
            m *= p;
            if (m > (static_cast<__int128>(1) << 62))
                throw ConfigError("p^precision exceeds the coefficient range; lower N or the iteration budget");
        }
    }

    bool compatible(const RingConfig& o) const {
        return p == o.p && N == o.N && E == o.E && K == o.K && gamma == o.gamma;
    }

    // Smallest positive step of the exponent lattice (1/p^K) Z.
    Rational lattice_step() const { return Rational(1, pow_ll(p, K)); }

    // Snap a rational upward onto the exponent lattice.
    Rational lattice_ceil(const Rational& x) const {
        long long q = pow_ll(p, K);
        Rational scaled = x * Rational(q);
        return Rational(scaled.ceil(), q);
    }
};

} // namespace wittlab

#endif
