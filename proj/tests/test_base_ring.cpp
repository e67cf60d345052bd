#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wittlab/parse.hpp"
#include "wittlab/perf_elem.hpp"
#include "wittlab/sampling.hpp"

using namespace wittlab;

namespace {

RingConfig config(long long p = 2, int N = 3, long long E = 8, int K = 3, Rational gamma = 1) {
    RingConfig cfg;
    cfg.p = p;
    cfg.N = N;
    cfg.E = Rational(E);
    cfg.K = K;
    cfg.gamma = gamma;
    cfg.validate();
    return cfg;
}

} // namespace

TEST_CASE("rational arithmetic and lattice helpers") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(-3, 6) == Rational(-1, 2));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).ceil() == 4);
    int pow = -1;
    CHECK(Rational(3, 8).denominator_is_p_power(2, 5, &pow));
    CHECK(pow == 3);
    CHECK_FALSE(Rational(1, 6).denominator_is_p_power(2, 5));
    CHECK_THROWS_AS(Rational(INT64_MAX, 1) + Rational(INT64_MAX, 1), ArithmeticOverflow);
}

TEST_CASE("lognorm three-valued comparisons") {
    LogNorm a = LogNorm::exact(Rational(3, 2));
    LogNorm b = LogNorm::at_most(Rational(4));
    CHECK((a + a).log_value() == Rational(3));
    CHECK(LogNorm::log_min(a, b).log_value() == Rational(3, 2));
    CHECK(LogNorm::log_min(a, b).is_exact());
    CHECK(b.decide_log_ge(Rational(4)));
    CHECK_THROWS_AS(LogNorm::at_most(Rational(1)).decide_log_ge(Rational(2)), PrecisionExceeded);
    CHECK_THROWS_AS(LogNorm::decide_equal(b, LogNorm::exact(Rational(5))), PrecisionExceeded);
    CHECK_FALSE(LogNorm::decide_equal(b, a));
    CHECK(LogNorm::exact(Rational(5)).capped(Rational(4)).is_at_most());
}

TEST_CASE("characteristic p identities") {
    RingConfig cfg = config(2);
    PerfElem one_t = parse_perf("1 + t", cfg);
    CHECK((one_t + one_t).is_zero_rep());                     // (1+t) + (1+t) = 0
    CHECK(one_t * one_t == parse_perf("1 + t^2", cfg));       // Frobenius is squaring
    PerfElem half = parse_perf("t^(1/2)", cfg);
    CHECK(half * half == parse_perf("t", cfg));               // exponent addition
}

TEST_CASE("p-th roots and powers invert each other") {
    RingConfig cfg = config(2);
    CHECK(parse_perf("1 + t", cfg).root_p() == parse_perf("1 + t^(1/2)", cfg));
    CHECK(parse_perf("t^3", cfg).root_p() == parse_perf("t^(3/2)", cfg));
    std::mt19937_64 rng(7);
    SampleOpts o;
    o.denom_pow = 2; // leave headroom for one more root within K_work
    for (int i = 0; i < 100; ++i) {
        PerfElem a = sample_perf(rng, cfg, o);
        CHECK(a.root_p().pow_p() == a);
        CHECK(a.pow_p().root_p() == a);
    }
    // root output window shrinks to trunc/p
    CHECK(parse_perf("t", cfg).root_p().trunc() == Rational(4));
}

TEST_CASE("t-adic norm") {
    RingConfig cfg = config(2);
    LogNorm n = parse_perf("t*t^(1/2)", cfg).norm();
    CHECK(n.is_exact());
    CHECK(n.log_value() == Rational(3, 2));
    LogNorm z = PerfElem::zero(cfg).norm();
    CHECK(z.is_at_most());
    CHECK(z.log_value() == Rational(8)); // gamma * E
    // multiplicative and ultrametric on random exact pairs
    std::mt19937_64 rng(11);
    SampleOpts o;
    o.allow_zero = false;
    for (int i = 0; i < 200; ++i) {
        PerfElem a = sample_perf_nonzero(rng, cfg, o), b = sample_perf_nonzero(rng, cfg, o);
        CHECK((a * b).norm().log_value() == a.norm().log_value() + b.norm().log_value());
        PerfElem s = a + b;
        Rational lo = Rational::min(a.norm().log_value(), b.norm().log_value());
        if (!s.is_zero_rep()) {
            CHECK(s.norm().log_value() >= lo);
            if (a.norm().log_value() != b.norm().log_value())
                CHECK(s.norm().log_value() == lo);
        }
    }
}

TEST_CASE("ring axioms on random triples") {
    for (long long p : {2LL, 3LL, 5LL}) {
        RingConfig cfg = config(p, 3, 8, 2);
        std::mt19937_64 rng(1000 + static_cast<unsigned long long>(p));
        SampleOpts o;
        for (int i = 0; i < 200; ++i) {
            PerfElem a = sample_perf(rng, cfg, o), b = sample_perf(rng, cfg, o),
                     c = sample_perf(rng, cfg, o);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a - a).is_zero_rep());
        }
    }
}

TEST_CASE("inverses") {
    RingConfig cfg = config(2, 3, 4);
    PerfElem inv = parse_perf("1 + t", cfg).inverse();
    CHECK(inv == parse_perf("1 + t + t^2 + t^3", cfg));
    CHECK_THROWS_AS(parse_perf("t", cfg).inverse(), NotInvertible);
    PerfElem tl = parse_perf("t", cfg, true);
    CHECK(tl.inverse() == parse_perf("t^(-1)", cfg, true));
    CHECK_THROWS_AS(PerfElem::zero(cfg).inverse(), NotInvertible);
    // a * a^-1 = 1 up to the window
    std::mt19937_64 rng(5);
    SampleOpts o;
    for (int i = 0; i < 50; ++i) {
        PerfElem u = sample_unit(rng, cfg, o);
        PerfElem prod = u * u.inverse();
        PerfElem diff = prod - PerfElem::constant(cfg, 1);
        CHECK((diff.is_zero_rep() || diff.valuation() >= Rational(4)));
    }
}

TEST_CASE("denominator cap raises instead of re-truncating") {
    RingConfig cfg = config(2, 2, 8, 1); // K_work = 2
    PerfElem x = parse_perf("t^(1/2)", cfg);
    CHECK(x.root_p() == parse_perf("t^(1/4)", cfg)); // within K_work
    CHECK_THROWS_AS(x.root_p().root_p(), DenominatorOverflow);
    CHECK_THROWS_AS(parse_perf("t^(1/4)", cfg), ParseError); // user input capped at K
}

TEST_CASE("grammar round trip") {
    RingConfig cfg = config(3, 3, 16, 2);
    std::mt19937_64 rng(99);
    SampleOpts o;
    o.denom_pow = 2;
    o.max_num = 10;
    for (int i = 0; i < 200; ++i) {
        PerfElem a = sample_perf(rng, cfg, o);
        CHECK(parse_perf(to_string(a), cfg) == a);
    }
    // whitespace-insensitive and sign handling
    CHECK(parse_perf(" 1+ 2*t^( 1/3) ", cfg) == parse_perf("1+2*t^(1/3)", cfg));
    CHECK(parse_perf("-t", cfg) == parse_perf("2*t", cfg));
    CHECK(parse_perf("0", cfg).is_zero_rep());
    CHECK_THROWS_AS(parse_perf("t^(1/2)", cfg), ParseError);
    CHECK_THROWS_AS(parse_perf("q + 1", cfg), ParseError);
}
