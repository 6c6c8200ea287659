#pragma once

/**
 * @file random.hpp
 * @brief Seeded random elements for property checks.
 *
 * All draws go through std::mt19937_64 so a seed fixes every sample.
 */

#include <random>
#include <vector>

#include "gammadelta/deltaring.hpp"
#include "gammadelta/derham.hpp"
#include "gammadelta/dpalg.hpp"

namespace gammadelta {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Small scalar in the domain: numerator in [-6, 6], denominator prime to p unless rational.
template <class K>
K random_scalar(Rng& rng, const CoeffDomain& dom, bool nonzero = true) {
    while (true) {
        const long num = uniform(rng, -6, 6);
        long den = uniform(rng, 1, 7);
        if (dom.kind != CoeffDomain::Kind::rational && dom.p != 0)
            while (den % dom.p == 0) den = uniform(rng, 1, 7);
        const K c = scalar_from<K>(make_rational(num, den), dom);
        if (!nonzero || !is_zero(c)) return c;
    }
}

/// Element of the divided-power ideal: every monomial has weight in [1, max_weight].
template <class K>
DPElement<K> random_ideal_element(Rng& rng, const PDContextPtr& ctx, int max_terms, unsigned max_weight,
                                  unsigned max_ordinary = 2) {
    DPElement<K> f(ctx);
    const auto r = static_cast<unsigned>(ctx->num_divided());
    if (r == 0) throw NotInIdeal("no divided variables");
    const int terms = static_cast<int>(uniform(rng, 1, max_terms));
    for (int t = 0; t < terms; ++t) {
        DPMonomial m{std::vector<unsigned>(ctx->num_ordinary(), 0), std::vector<unsigned>(r, 0)};
        for (auto& a : m.ordinary) a = static_cast<unsigned>(uniform(rng, 0, max_ordinary));
        const unsigned w = static_cast<unsigned>(uniform(rng, 1, max_weight));
        for (unsigned k = 0; k < w; ++k) ++m.divided[static_cast<std::size_t>(uniform(rng, 0, r - 1))];
        f.add_term(m, random_scalar<K>(rng, ctx->domain()));
    }
    if (f.is_zero()) return random_ideal_element<K>(rng, ctx, max_terms, max_weight, max_ordinary);
    return f;
}

/// Polynomial in the tower variables of depth <= max_depth, total degree <= max_degree.
inline DeltaElement random_delta_element(Rng& rng, const DeltaContextPtr& ctx, int max_terms, long max_depth,
                                         int max_degree) {
    DeltaElement f(ctx);
    const int terms = static_cast<int>(uniform(rng, 1, max_terms));
    const auto gens = static_cast<long>(ctx->generators().size());
    for (int t = 0; t < terms; ++t) {
        DeltaElement m = DeltaElement::constant(ctx, random_scalar<Rational>(rng, ctx->domain()));
        const int deg = static_cast<int>(uniform(rng, 0, max_degree));
        for (int k = 0; k < deg; ++k)
            m = m * DeltaElement::tower(ctx, static_cast<std::size_t>(uniform(rng, 0, gens - 1)), uniform(rng, 0, max_depth));
        f += m;
    }
    return f;
}

/// Homogeneous form of degree q and weight w (field base, no base variables).
template <class K>
Form<K> random_form(Rng& rng, const DeRhamContextPtr& ctx, long w, int q, int max_terms) {
    const auto basis = form_basis(*ctx, w, q);
    Form<K> f(ctx);
    if (basis.empty()) return f;
    const int terms = static_cast<int>(uniform(rng, 1, max_terms));
    for (int t = 0; t < terms; ++t) {
        const auto& key = basis[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(basis.size()) - 1))];
        f.add_term(key.monomial, key.wedge, random_scalar<K>(rng, ctx->domain()));
    }
    return f;
}

}  // namespace gammadelta
