#include <gtest/gtest.h>

#include <random>

#include "gammadelta/scalars.hpp"

using namespace gammadelta;

TEST(Valuation, Examples) {
    const PrimeContext two(2), three(3);
    EXPECT_EQ(vp(Rational(12), two), 2);
    EXPECT_EQ(vp(Rational(1), three), 0);
    EXPECT_FALSE(vp(Rational(0), two).has_value());
    EXPECT_EQ(vp(make_rational(5, 24), two), -3);
    EXPECT_EQ(vp(make_rational(-9, 4), three), 2);
}

TEST(Valuation, IsAdditiveOnProducts) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
    for (long p : {2L, 3L, 5L}) {
        const PrimeContext ctx(p);
        for (int t = 0; t < 200; ++t) {
            long a = num(rng), b = num(rng);
            if (a == 0) a = 1;
            if (b == 0) b = -1;
            const Rational x = make_rational(a, den(rng)), y = make_rational(b, den(rng));
            EXPECT_EQ(*vp(x * y, ctx), *vp(x, ctx) + *vp(y, ctx));
            // v(x + y) >= min(v(x), v(y))
            if (x + y != 0) {
                EXPECT_GE(*vp(x + y, ctx), std::min(*vp(x, ctx), *vp(y, ctx)));
            }
        }
    }
}

TEST(PLocal, Examples) {
    EXPECT_TRUE(is_p_local(make_rational(3, 5), PrimeContext(2)));
    EXPECT_FALSE(is_p_local(make_rational(1, 2), PrimeContext(2)));
    EXPECT_TRUE(is_p_local(Rational(0), PrimeContext(7)));
}

TEST(ModP, Examples) {
    const PrimeContext two(2);
    EXPECT_EQ(mod_p(make_rational(3, 5), two).v, 1u);
    EXPECT_EQ(mod_p(Rational(4), two).v, 0u);
    EXPECT_THROW(mod_p(make_rational(1, 2), two), NonPLocal);
    EXPECT_EQ(mod_p(make_rational(-1, 3), PrimeContext(5)).v, 3u);  // 3 * 3 = 9 = -1
}

TEST(ModP, IsRingHomomorphism) {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-300, 300), den(1, 300);
    for (long p : {2L, 3L, 5L, 7L}) {
        const PrimeContext ctx(p);
        int checked = 0;
        while (checked < 100) {
            const Rational x = make_rational(num(rng), den(rng)), y = make_rational(num(rng), den(rng));
            if (!is_p_local(x, ctx) || !is_p_local(y, ctx)) continue;
            ++checked;
            EXPECT_EQ(mod_p(x + y, ctx), mod_p(x, ctx) + mod_p(y, ctx));
            EXPECT_EQ(mod_p(x * y, ctx), mod_p(x, ctx) * mod_p(y, ctx));
            EXPECT_EQ(mod_p(-x, ctx), -mod_p(x, ctx));
        }
    }
}

TEST(PrimeContext, RejectsComposites) {
    EXPECT_THROW(PrimeContext(4), Error);
    EXPECT_THROW(PrimeContext(1), Error);
    EXPECT_NO_THROW(PrimeContext(13));
}

TEST(PrimeField, InverseAndPow) {
    for (long p : {2L, 3L, 5L, 7L, 11L})
        for (long a = 1; a < p; ++a) {
            const Fp x(a, p);
            EXPECT_EQ(x * x.inverse(), Fp(1, p));
            EXPECT_EQ(x.pow(static_cast<std::uint64_t>(p - 1)), Fp(1, p));
        }
    EXPECT_THROW(Fp(0, 5).inverse(), ZeroElement);
    EXPECT_THROW(Fp(1, 3) + Fp(1, 5), ContextMismatch);
}

TEST(GammaCompCoeff, Examples) {
    EXPECT_EQ(gamma_comp_coeff(1, 5), 1);
    EXPECT_EQ(gamma_comp_coeff(2, 2), 3);
    EXPECT_EQ(gamma_comp_coeff(2, 3), 10);
    EXPECT_THROW(gamma_comp_coeff(2, 0), Error);
}

TEST(GammaCompCoeff, MatchesFactorialQuotient) {
    for (unsigned m = 0; m <= 6; ++m)
        for (unsigned n = 1; n <= 6; ++n) {
            Integer fm = 1, fn = 1, fmn = 1;
            for (unsigned k = 2; k <= m; ++k) fm *= k;
            for (unsigned k = 2; k <= n; ++k) fn *= k;
            for (unsigned k = 2; k <= m * n; ++k) fmn *= k;
            Integer den = fm;
            for (unsigned k = 0; k < m; ++k) den *= fn;
            EXPECT_EQ(fmn % den, 0);
            EXPECT_EQ(gamma_comp_coeff(m, n), fmn / den) << m << "," << n;
        }
}

TEST(Binomial, PascalAndSymmetry) {
    for (unsigned n = 1; n < 30; ++n)
        for (unsigned k = 1; k < n; ++k) {
            EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            EXPECT_EQ(binomial(n, k), binomial(n, n - k));
        }
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(multinomial({2, 1, 1}), 12);
}

TEST(Rational, Canonical) {
    EXPECT_EQ(make_rational(3, 3), Rational(1));
    EXPECT_EQ(make_rational(2, -4).get_str(), "-1/2");
    EXPECT_THROW(make_rational(1, 0), Error);
    EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
}
