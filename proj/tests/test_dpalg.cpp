#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>

#include "gammadelta/dpalg.hpp"
#include "gammadelta/random.hpp"

using namespace gammadelta;

namespace {

using E = DPElement<Rational>;

// Over Q, gamma_n(y) -> y^n / n! embeds the divided-power algebra into the
// polynomial ring. Keys are (ordinary exponents ++ divided exponents).
using Poly = std::map<std::vector<unsigned>, Rational>;

Poly embed(const E& f) {
    Poly out;
    for (const auto& [m, c] : f.terms()) {
        std::vector<unsigned> key = m.ordinary;
        Rational coeff = c;
        for (unsigned b : m.divided) {
            key.push_back(b);
            Integer fact = 1;
            for (unsigned k = 2; k <= b; ++k) fact *= k;
            coeff /= Rational(fact);
        }
        out[key] = coeff;
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            auto k = ka;
            for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
            out[k] += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

Poly poly_pow(const Poly& a, unsigned n, std::size_t nvars) {
    Poly out{{std::vector<unsigned>(nvars, 0), Rational(1)}};
    for (unsigned k = 0; k < n; ++k) out = poly_mul(out, a);
    return out;
}

Poly poly_scale(Poly a, const Rational& s) {
    for (auto& [k, c] : a) c *= s;
    return a;
}

DPMonomial mono(std::vector<unsigned> ord, std::vector<unsigned> div) { return {std::move(ord), std::move(div)}; }

}  // namespace

TEST(DpMul, Examples) {
    auto ctx = make_pd_context({"x"}, {"y"}, CoeffDomain::rational(), 12);
    const E g2 = E::divided(ctx, 0, 2), g3 = E::divided(ctx, 0, 3);
    EXPECT_EQ(g2 * g3, E::divided(ctx, 0, 5).scaled(Rational(10)));
    EXPECT_EQ(E::one(ctx) * g3, g3);
    const E x = E::ordinary(ctx, 0);
    EXPECT_EQ(x * g2, E::monomial(ctx, mono({1}, {2}), Rational(1)));
    EXPECT_EQ(to_string(x * g2), "x*g_2(y)");
}

TEST(DpMul, OverflowIsReported) {
    auto ctx = make_pd_context({}, {"y"}, CoeffDomain::rational(), 4);
    const E g3 = E::divided(ctx, 0, 3);
    EXPECT_THROW(g3 * g3, TruncationOverflow);
    EXPECT_THROW(E::divided(ctx, 0, 5), TruncationOverflow);
}

TEST(DpMul, MatchesPolynomialEmbedding) {
    auto ctx = make_pd_context({"x"}, {"y1", "y2"}, CoeffDomain::rational(), 12);
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const E a = random_ideal_element<Rational>(rng, ctx, 3, 5);
        const E b = random_ideal_element<Rational>(rng, ctx, 3, 5);
        EXPECT_EQ(embed(a * b), poly_mul(embed(a), embed(b)));
    }
}

TEST(DpMul, AssociativeAndCommutative) {
    auto ctx = make_pd_context({"x"}, {"y1", "y2"}, CoeffDomain::rational(), 12);
    Rng rng(99);
    for (int t = 0; t < 100; ++t) {
        const E a = random_ideal_element<Rational>(rng, ctx, 3, 4);
        const E b = random_ideal_element<Rational>(rng, ctx, 3, 4);
        const E c = random_ideal_element<Rational>(rng, ctx, 3, 4);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(DividedPower, Examples) {
    auto ctx = make_pd_context({}, {"y1", "y2"}, CoeffDomain::rational(), 12);
    const E y1 = E::divided(ctx, 0), y2 = E::divided(ctx, 1);
    EXPECT_EQ(divided_power(2, y1 + y2), E::divided(ctx, 0, 2) + y1 * y2 + E::divided(ctx, 1, 2));
    EXPECT_EQ(to_string(divided_power(2, y1 + y2)), "g_2(y1) + y1*y2 + g_2(y2)");
    EXPECT_EQ(divided_power(2, y1.scaled(Rational(2))), E::divided(ctx, 0, 2).scaled(Rational(4)));
    EXPECT_EQ(divided_power(2, E::divided(ctx, 0, 2)), E::divided(ctx, 0, 4).scaled(Rational(3)));
    EXPECT_EQ(divided_power(0, y1), E::one(ctx));
    EXPECT_EQ(divided_power(1, y1 + y2), y1 + y2);
}

TEST(DividedPower, Errors) {
    auto ctx = make_pd_context({"x"}, {"y"}, CoeffDomain::rational(), 6);
    EXPECT_THROW(divided_power(2, E::ordinary(ctx, 0) + E::divided(ctx, 0)), NotInIdeal);
    EXPECT_THROW(divided_power(2, E::one(ctx)), NotInIdeal);
    EXPECT_THROW(divided_power(4, E::divided(ctx, 0, 2)), TruncationOverflow);
}

TEST(DividedPower, FactorialTimesGammaIsPower) {
    auto ctx = make_pd_context({"x"}, {"y1", "y2"}, CoeffDomain::rational(), 18);
    Rng rng(23);
    for (int t = 0; t < 60; ++t) {
        const E f = random_ideal_element<Rational>(rng, ctx, 3, 3);
        for (unsigned n = 0; n <= 6; ++n) {
            Integer fact = 1;
            for (unsigned k = 2; k <= n; ++k) fact *= k;
            EXPECT_EQ(divided_power(n, f).scaled(Rational(fact)), f.pow(n));
            // and the same through the polynomial embedding
            EXPECT_EQ(embed(divided_power(n, f)), poly_scale(poly_pow(embed(f), n, 3), 1 / Rational(fact)));
        }
    }
}

TEST(DividedPower, IndependentOfVariableOrder) {
    auto fwd = make_pd_context({"x"}, {"a", "b", "c"}, CoeffDomain::rational(), 12);
    auto rev = make_pd_context({"x"}, {"c", "b", "a"}, CoeffDomain::rational(), 12);
    auto flip = [](const E& f, const PDContextPtr& target) {
        E out(target);
        for (const auto& [m, c] : f.terms()) {
            DPMonomial flipped = m;
            std::reverse(flipped.divided.begin(), flipped.divided.end());
            out.add_term(flipped, c);
        }
        return out;
    };
    Rng rng(4);
    for (int t = 0; t < 60; ++t) {
        const E f = random_ideal_element<Rational>(rng, fwd, 3, 3);
        for (unsigned n = 2; n <= 4; ++n)
            EXPECT_EQ(flip(divided_power(n, flip(f, rev)), fwd), divided_power(n, f));
    }
}

TEST(DividedPower, AxiomsOverPrimeField) {
    for (long p : {2L, 3L, 5L}) {
        auto ctx = make_pd_context({"x"}, {"y"}, CoeffDomain::prime_field(PrimeContext(p)), 12);
        using F = DPElement<Fp>;
        Rng rng(static_cast<unsigned>(p));
        for (int t = 0; t < 40; ++t) {
            const F f = random_ideal_element<Fp>(rng, ctx, 2, 2);
            const F g = random_ideal_element<Fp>(rng, ctx, 2, 2);
            for (unsigned m = 0; m <= 3; ++m)
                for (unsigned n = 0; n + m <= 6; ++n)
                    EXPECT_EQ(divided_power(m, f) * divided_power(n, f),
                              divided_power(m + n, f).scaled(Fp(binomial(m + n, m).get_si() % p, p)));
            for (unsigned n = 0; n <= 5; ++n) {
                F sum = F::zero(ctx);
                for (unsigned i = 0; i <= n; ++i) sum += divided_power(i, f) * divided_power(n - i, g);
                EXPECT_EQ(divided_power(n, f + g), sum);
            }
        }
    }
}

TEST(PdFiltrationWeight, Examples) {
    auto ctx = make_pd_context({"x"}, {"y"}, CoeffDomain::rational(), 6);
    const E x = E::ordinary(ctx, 0), y = E::divided(ctx, 0);
    EXPECT_EQ(pd_filtration_weight(E::divided(ctx, 0, 3)), 3);
    EXPECT_EQ(pd_filtration_weight(x * y + E::divided(ctx, 0, 2)), 1);
    EXPECT_EQ(pd_filtration_weight(x), 0);
    EXPECT_THROW(pd_filtration_weight(E::zero(ctx)), ZeroElement);
}

TEST(GrRank, Examples) {
    auto one = make_pd_context({"x"}, {"y"}, CoeffDomain::rational(), 8);
    auto two = make_pd_context({"x"}, {"y1", "y2"}, CoeffDomain::rational(), 8);
    const auto a = gr_rank(one, Filtration::pd, 5);
    EXPECT_EQ(a.rank, 1);
    EXPECT_EQ(a.expected, 1);
    EXPECT_TRUE(a.pass);
    const auto b = gr_rank(two, Filtration::pd, 2);
    EXPECT_EQ(b.rank, 3);
    EXPECT_TRUE(b.pass);
    const auto c = gr_rank(two, Filtration::adic, 0);
    EXPECT_EQ(c.rank, 1);
    EXPECT_TRUE(c.pass);
    EXPECT_THROW(gr_rank(one, Filtration::pd, 9), TruncationOverflow);
}

TEST(GrRank, StarsAndBars) {
    for (unsigned r = 1; r <= 3; ++r) {
        std::vector<std::string> ys;
        for (unsigned j = 0; j < r; ++j) ys.push_back("y" + std::to_string(j));
        auto ctx = make_pd_context({"x"}, ys, CoeffDomain::rational(), 8);
        for (long n = 0; n <= 8; ++n) {
            // count exponent vectors of total n by brute force
            long count = 0;
            std::vector<unsigned> e(r, 0);
            std::function<void(unsigned, long)> rec = [&](unsigned i, long left) {
                if (i + 1 == r) {
                    ++count;
                    return;
                }
                for (long k = 0; k <= left; ++k) rec(i + 1, left - k);
            };
            rec(0, n);
            for (auto filt : {Filtration::pd, Filtration::adic}) {
                const auto res = gr_rank(ctx, filt, n);
                EXPECT_EQ(res.rank, count);
                EXPECT_EQ(res.expected, count);
                EXPECT_TRUE(res.pass);
            }
        }
    }
}

TEST(ConjFilPd, Examples) {
    const PrimeContext two(2);
    auto one = make_pd_context({}, {"y"}, CoeffDomain::prime_field(two), 12);
    const auto rep = conj_fil_pd(one, 1);
    ASSERT_EQ(rep.pieces.size(), 2u);
    EXPECT_EQ(rep.pieces[0].rank, 1);
    EXPECT_EQ(rep.pieces[0].generators, std::vector<std::string>{"1"});
    EXPECT_EQ(rep.pieces[1].rank, 1);
    EXPECT_EQ(rep.pieces[1].generators, std::vector<std::string>{"g_2(y)"});
    EXPECT_TRUE(rep.pass());

    auto pair = make_pd_context({}, {"y1", "y2"}, CoeffDomain::prime_field(two), 12);
    const auto rep2 = conj_fil_pd(pair, 1);
    EXPECT_EQ(rep2.pieces[1].rank, 2);
    auto gens = rep2.pieces[1].generators;
    std::sort(gens.begin(), gens.end());
    EXPECT_EQ(gens, (std::vector<std::string>{"g_2(y1)", "g_2(y2)"}));
    EXPECT_TRUE(rep2.pass());
}

TEST(ConjFilPd, RanksUpToFour) {
    for (long p : {2L, 3L})
        for (std::vector<std::string> ys : {std::vector<std::string>{"y"}, std::vector<std::string>{"y1", "y2"}}) {
            const long r = static_cast<long>(ys.size());
            const long bound = r * (p - 1) + 4 * p;
            auto ctx = make_pd_context({}, ys, CoeffDomain::prime_field(PrimeContext(p)), bound);
            const auto rep = conj_fil_pd(ctx, 4);
            for (const auto& piece : rep.pieces) EXPECT_EQ(piece.rank, r == 1 ? 1 : 1 - piece.index);
            EXPECT_TRUE(rep.pass()) << "p=" << p << " r=" << r;
        }
}

TEST(ConjFilPd, Preconditions) {
    auto q = make_pd_context({}, {"y"}, CoeffDomain::rational(), 12);
    EXPECT_THROW(conj_fil_pd(q, 1), ContextMismatch);
    auto small = make_pd_context({}, {"y"}, CoeffDomain::prime_field(PrimeContext(2)), 3);
    EXPECT_THROW(conj_fil_pd(small, 2), TruncationOverflow);
}

TEST(ModPBasisChange, Examples) {
    const auto two = mod_p_basis_change(PrimeContext(2), 8);
    // y * gamma_2(y) = 3 gamma_3(y) = gamma_3(y) over F_2
    EXPECT_EQ(two.matrix.at(3, 3), Fp(1, 2));
    EXPECT_EQ(two.matrix.at(5, 5), Fp(1, 2));
    EXPECT_TRUE(two.invertible);
    const auto five = mod_p_basis_change(PrimeContext(5), 4);
    EXPECT_TRUE(five.invertible);
    for (std::size_t n = 0; n <= 4; ++n) EXPECT_NE(five.matrix.at(n, n), Fp(0, 5));
}

TEST(ModPBasisChange, InvertibleUpToCube) {
    EXPECT_TRUE(mod_p_basis_change(PrimeContext(2), 8).invertible);
    EXPECT_TRUE(mod_p_basis_change(PrimeContext(3), 9).invertible);
    EXPECT_TRUE(mod_p_basis_change(PrimeContext(3), 27).invertible);
}

TEST(DpContext, RejectsDuplicates) {
    EXPECT_THROW(make_pd_context({"x"}, {"x"}, CoeffDomain::rational(), 3), ContextMismatch);
    EXPECT_THROW(make_pd_context({}, {"y"}, CoeffDomain::rational(), -1), ContextMismatch);
}
