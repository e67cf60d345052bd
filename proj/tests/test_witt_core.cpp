#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wittlab/parse.hpp"
#include "wittlab/sampling.hpp"
#include "wittlab/witt_elem.hpp"

using namespace wittlab;

namespace {

RingConfig config(long long p = 2, int N = 3, long long E = 8, int K = 3) {
    RingConfig cfg;
    cfg.p = p;
    cfg.N = N;
    cfg.E = Rational(E);
    cfg.K = K;
    cfg.gamma = Rational(1);
    cfg.validate();
    return cfg;
}

WittElem times_p_pow(WittElem w, int k) {
    int target = w.precision();
    for (int i = 0; i < k; ++i) w = w.times_p().reduced_precision(target);
    return w;
}

} // namespace

TEST_CASE("ring operations in the polynomial representation") {
    RingConfig cfg = config(2, 2);
    CHECK(parse_witt("[t] * [t^(1/2)]", cfg) == parse_witt("t * t^(1/2)", cfg));
    CHECK(parse_witt("1 + 1", cfg) == WittElem::constant(cfg, 2));
    std::mt19937_64 rng(3);
    SampleOpts o;
    RingConfig c3 = config(3, 3);
    for (int i = 0; i < 50; ++i) {
        WittElem a = sample_witt(rng, c3, o);
        CHECK((a - a).is_zero_rep());
    }
}

TEST_CASE("teichmueller lift examples") {
    RingConfig c22 = config(2, 2);
    CHECK(to_string(teich(parse_perf("t^(1/2)", c22))) == "t^(1/2)");
    CHECK(to_string(teich(parse_perf("1 + t", c22))) == "1 + 2*t^(1/2) + t");
    RingConfig c32 = config(3, 2);
    CHECK(to_string(teich(parse_perf("2", c32))) == "8"); // Teichmueller of -1 is -1
}

TEST_CASE("teich is multiplicative") {
    for (long long p : {2LL, 3LL}) {
        RingConfig cfg = config(p, 3, 32, 1);
        std::mt19937_64 rng(40 + static_cast<unsigned long long>(p));
        SampleOpts o;
        o.max_num = 3; // keep products inside the window so equality is exact
        for (int i = 0; i < 100; ++i) {
            PerfElem x = sample_perf(rng, cfg, o), y = sample_perf(rng, cfg, o);
            CHECK(teich(x) * teich(y) == teich(x * y));
        }
    }
}

TEST_CASE("teich expansion: digits and reassembly") {
    RingConfig cfg = config(2, 3);
    SUBCASE("teich_expand(p) = (0, 1, 0)") {
        TeichDigits d = teich_expand(WittElem::prime(cfg));
        CHECK(d[0].is_zero_rep());
        CHECK(to_string(d[1]) == "1");
        CHECK(d[2].is_zero_rep());
    }
    SUBCASE("teich_expand(teich(x)) = (x, 0, ...)") {
        std::mt19937_64 rng(8);
        SampleOpts o;
        for (int i = 0; i < 50; ++i) {
            PerfElem x = sample_perf(rng, cfg, o);
            TeichDigits d = teich_expand(teich(x));
            CHECK(d[0] == x);
            CHECK(d[1].is_zero_rep());
            CHECK(d[2].is_zero_rep());
        }
    }
    SUBCASE("1 + [1+t]: digit 0 is t, digit 1 a unit") {
        TeichDigits d = teich_expand(parse_witt("1 + [1+t]", cfg));
        CHECK(to_string(d[0]) == "t");
        CHECK(d[1].valuation().is_zero());
    }
    SUBCASE("reassembly equals the element") {
        for (long long p : {2LL, 3LL}) {
            RingConfig c = config(p, 3);
            std::mt19937_64 rng(60 + static_cast<unsigned long long>(p));
            SampleOpts o;
            for (int i = 0; i < 60; ++i) {
                WittElem w = sample_witt(rng, c, o);
                TeichDigits d = teich_expand(w);
                WittElem sum = WittElem::zero(c);
                for (int j = 0; j < d.precN; ++j)
                    sum = sum + times_p_pow(teich(d[static_cast<std::size_t>(j)], c.N), j);
                CHECK(sum == w);
            }
        }
    }
}

TEST_CASE("subtraction digits are tangent to the identity") {
    // Writing [x+1] - 1 = sum p^i [P_i(x^(1/p^i))], the P_i satisfy
    // P_i(T) = T mod T^2: for a monomial x the lowest term of digit i is
    // exactly x^(1/p^i).
    for (long long p : {2LL, 3LL}) {
        RingConfig cfg = config(p, 3, 64, 0);
        for (long long a : {1LL, 2LL, 4LL}) {
            for (long long c = 1; c < p; ++c) {
                PerfElem x = PerfElem::monomial(cfg, c, Rational(a));
                WittElem w = teich(x + PerfElem::constant(cfg, 1)) - WittElem::constant(cfg, 1);
                TeichDigits d = teich_expand(w);
                for (int i = 0; i < cfg.N; ++i) {
                    const PerfElem& di = d[static_cast<std::size_t>(i)];
                    if (di.is_zero_rep()) continue; // P_i may vanish entirely at small degree
                    Rational root_exp = Rational(a) / Rational(pow_ll(p, i));
                    CHECK(di.valuation() == root_exp);
                    long long root_coeff = c; // c^(1/p^i) = c in F_p
                    CHECK(di.leading_coeff() == root_coeff);
                }
            }
        }
    }
}

TEST_CASE("frobenius") {
    RingConfig cfg = config(2, 3);
    CHECK(parse_witt("[t]", cfg).frobenius() == parse_witt("[t^2]", cfg));
    CHECK(WittElem::prime(cfg).frobenius() == WittElem::prime(cfg));
    std::mt19937_64 rng(21);
    SampleOpts o;
    o.denom_pow = 1;
    for (int i = 0; i < 60; ++i) {
        WittElem w = sample_witt(rng, cfg, o);
        CHECK(w.frobenius().frobenius_inv() == w);
        CHECK(teich(w.reduce_mod_p()).frobenius() == teich(w.reduce_mod_p().pow_p()));
    }
}

TEST_CASE("p-derivation") {
    SUBCASE("delta([r]) = 0 and the worked values") {
        RingConfig cfg = config(2, 3);
        CHECK(p_derivation(parse_witt("[t^2]", cfg)).is_zero_rep());
        // delta(p) = 1 - p^(p-1) mod p^(N-1)
        CHECK(p_derivation(WittElem::prime(cfg)) == WittElem::constant(cfg, -1 + 4 + 1 - 2, 2) +
                                                        WittElem::zero(cfg, 2));
        CHECK(to_string(p_derivation(WittElem::prime(cfg))) == "3"); // 1 - 2 = -1 = 3 mod 4
        // delta(p [t]) = [t^p] (1 - p^(p-1))
        WittElem lhs = p_derivation(parse_witt("p * [t]", cfg));
        WittElem rhs =
            (parse_witt("[t^2]", cfg) * parse_witt("1 - p", cfg)).reduced_precision(2);
        CHECK(lhs == rhs);
    }
    SUBCASE("delta properties (a),(b),(c)") {
        for (long long p : {2LL, 3LL}) {
            RingConfig cfg = config(p, 3, 16, 1);
            CHECK(p_derivation(WittElem::constant(cfg, 1)).is_zero_rep());
            std::mt19937_64 rng(77 + static_cast<unsigned long long>(p));
            SampleOpts o;
            o.max_num = 2;
            for (int i = 0; i < 40; ++i) {
                WittElem a = sample_witt(rng, cfg, o), b = sample_witt(rng, cfg, o);
                // P(a,b) = ((a+b)^p - a^p - b^p)/p
                WittElem pab =
                    ((a + b).pow(cfg.p) - a.pow(cfg.p) - b.pow(cfg.p)).divided_by_p();
                CHECK(p_derivation(a + b) ==
                      (p_derivation(a) + p_derivation(b) - pab).reduced_precision(cfg.N - 1));
                WittElem lhs = p_derivation(a * b);
                WittElem rhs = (a.pow(cfg.p) * p_derivation(b) + b.pow(cfg.p) * p_derivation(a) +
                                p_derivation(a) * p_derivation(b).times_p())
                                   .reduced_precision(cfg.N - 1);
                CHECK(lhs == rhs);
            }
        }
    }
    SUBCASE("precision guard") {
        RingConfig cfg = config(2, 1);
        CHECK_THROWS_AS(p_derivation(WittElem::constant(cfg, 1)), InsufficientPrecision);
    }
}

TEST_CASE("witt inverse") {
    RingConfig cfg = config(2, 3);
    CHECK(witt_inv(WittElem::constant(cfg, 1)) == WittElem::constant(cfg, 1));
    WittElem a = parse_witt("1 - [t]", cfg);
    WittElem prod = witt_inv(a) * a;
    CHECK(prod == WittElem::constant(cfg, 1));
    CHECK_THROWS_AS(witt_inv(WittElem::prime(cfg)), NotInvertible);
    std::mt19937_64 rng(31);
    SampleOpts o;
    for (int i = 0; i < 40; ++i) {
        WittElem u = sample_stable_unit(rng, cfg, o);
        WittElem d = witt_inv(u) * u - WittElem::constant(cfg, 1);
        CHECK((d.is_zero_rep() || d.terms().begin()->first >= Rational(8)));
    }
}

TEST_CASE("witt grammar round trip") {
    RingConfig cfg = config(2, 3);
    std::mt19937_64 rng(123);
    SampleOpts o;
    for (int i = 0; i < 100; ++i) {
        WittElem w = sample_witt(rng, cfg, o);
        CHECK(parse_witt(to_string(w), cfg) == w);
        CHECK(parse_witt(to_teich_string(w), cfg) == w);
    }
    CHECK(parse_witt("p^2", cfg) == WittElem::constant(cfg, 4));
    CHECK(parse_witt("2 - [t]", cfg) == parse_witt("p - [t]", cfg));
}
