#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gammadelta/combinatorics.hpp"
#include "gammadelta/dpalg.hpp"
#include "gammadelta/exactla.hpp"

namespace gammadelta {

/// Gamma_{A[X]}(Y) over A = K[base ordinary variables]. One-form generators
/// are dx for every non-base ordinary x followed by dy for every divided y.
class DeRhamContext {
public:
    DeRhamContext(PDContextPtr target, std::vector<std::string> base_ordinary = {})
        : target_(std::move(target)), is_base_(target_->num_ordinary(), false) {
        for (const auto& name : base_ordinary) {
            const int i = target_->ordinary_index(name);
            if (i < 0) throw ContextMismatch("base variable " + name + " is not an ordinary variable");
            is_base_[static_cast<std::size_t>(i)] = true;
        }
        for (std::size_t i = 0; i < target_->num_ordinary(); ++i)
            if (!is_base_[i]) generators_.push_back({false, i});
        for (std::size_t j = 0; j < target_->num_divided(); ++j) generators_.push_back({true, j});
        if (generators_.size() > 31) throw Error("too many one-form generators");
    }

    struct Generator {
        bool divided;
        std::size_t index;
    };

    const PDContextPtr& target() const noexcept { return target_; }
    const CoeffDomain& domain() const noexcept { return target_->domain(); }
    std::size_t num_generators() const noexcept { return generators_.size(); }
    const Generator& generator(std::size_t g) const { return generators_.at(g); }
    bool is_base(std::size_t ordinary) const { return is_base_.at(ordinary); }
    bool has_base_variables() const {
        for (bool b : is_base_)
            if (b) return true;
        return false;
    }

    std::string generator_name(std::size_t g) const {
        const auto& gen = generators_.at(g);
        return "d" + (gen.divided ? target_->divided_vars()[gen.index] : target_->ordinary_vars()[gen.index]);
    }

    /// gamma_n(y) has weight n, each non-base ordinary variable weight 1, base variables weight 0.
    long weight(const DPMonomial& m) const {
        long w = m.weight();
        for (std::size_t i = 0; i < m.ordinary.size(); ++i)
            if (!is_base_[i]) w += m.ordinary[i];
        return w;
    }

private:
    PDContextPtr target_;
    std::vector<bool> is_base_;
    std::vector<Generator> generators_;
};

using DeRhamContextPtr = std::shared_ptr<const DeRhamContext>;

inline DeRhamContextPtr make_derham_context(PDContextPtr target, std::vector<std::string> base_ordinary = {}) {
    return std::make_shared<const DeRhamContext>(std::move(target), std::move(base_ordinary));
}

/// Bitmask of one-form generators; bit g set means dg is a wedge factor, in increasing order.
using WedgeMask = std::uint32_t;

inline int wedge_degree(WedgeMask s) { return std::popcount(s); }

struct FormKey {
    DPMonomial monomial;
    WedgeMask wedge = 0;
    friend bool operator==(const FormKey&, const FormKey&) = default;
};

struct FormKeyOrder {
    bool operator()(const FormKey& a, const FormKey& b) const {
        const int qa = wedge_degree(a.wedge), qb = wedge_degree(b.wedge);
        if (qa != qb) return qa < qb;
        if (a.wedge != b.wedge) return a.wedge < b.wedge;
        return DPMonomialOrder{}(a.monomial, b.monomial);
    }
};

/// Sign and mask of dg_S ^ dg_T, or sign 0 when they share a factor.
inline std::pair<int, WedgeMask> wedge_masks(WedgeMask s, WedgeMask t) {
    if (s & t) return {0, 0};
    // each factor of T moves past the factors of S that are larger than it
    int swaps = 0;
    for (WedgeMask rest = t; rest; rest &= rest - 1) {
        const int g = std::countr_zero(rest);
        swaps += std::popcount(s >> (g + 1));
    }
    return {swaps % 2 == 0 ? 1 : -1, s | t};
}

template <class K>
class Form {
public:
    using TermMap = std::map<FormKey, K, FormKeyOrder>;

    explicit Form(DeRhamContextPtr ctx) : ctx_(std::move(ctx)) {}

    static Form function(DeRhamContextPtr ctx, const DPElement<K>& f) {
        Form out(std::move(ctx));
        for (const auto& [m, c] : f.terms()) out.add_term(m, 0, c);
        return out;
    }

    /// The form dg for the g-th one-form generator.
    static Form generator(DeRhamContextPtr ctx, std::size_t g) {
        Form out(ctx);
        if (g >= ctx->num_generators()) throw ContextMismatch("one-form generator out of range");
        out.add_term(unit_monomial(*ctx), WedgeMask{1} << g, scalar_from<K>(1L, ctx->domain()));
        return out;
    }

    const DeRhamContextPtr& context() const noexcept { return ctx_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const DPMonomial& m, WedgeMask s, const K& c) {
        if (is_zero_scalar(c)) return;
        auto [it, inserted] = terms_.try_emplace(FormKey{m, s}, c);
        if (!inserted) {
            it->second = it->second + c;
            if (is_zero_scalar(it->second)) terms_.erase(it);
        }
    }

    /// Homogeneous degree, or -1 when mixed; 0 for the zero form.
    int degree() const {
        int q = -2;
        for (const auto& [k, c] : terms_) {
            const int d = wedge_degree(k.wedge);
            if (q == -2) q = d;
            else if (q != d) return -1;
        }
        return q == -2 ? 0 : q;
    }

    Form& operator+=(const Form& o) {
        require_same(o);
        for (const auto& [k, c] : o.terms_) add_term(k.monomial, k.wedge, c);
        return *this;
    }
    Form& operator-=(const Form& o) {
        require_same(o);
        for (const auto& [k, c] : o.terms_) add_term(k.monomial, k.wedge, -c);
        return *this;
    }
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    Form operator-() const { return scaled(scalar_from<K>(-1L, ctx_->domain())); }

    Form scaled(const K& s) const {
        Form out(ctx_);
        for (const auto& [k, c] : terms_) out.add_term(k.monomial, k.wedge, c * s);
        return out;
    }

    friend Form wedge(const Form& a, const Form& b) {
        a.require_same(b);
        Form out(a.ctx_);
        const DPElement<K> helper(a.ctx_->target());
        for (const auto& [ka, ca] : a.terms_) {
            for (const auto& [kb, cb] : b.terms_) {
                const auto [sign, mask] = wedge_masks(ka.wedge, kb.wedge);
                if (sign == 0) continue;
                auto [m, k] = helper.multiply_monomials(ka.monomial, kb.monomial);
                const K c = ca * cb * k;
                out.add_term(m, mask, sign > 0 ? c : -c);
            }
        }
        return out;
    }

    friend bool operator==(const Form& a, const Form& b) {
        return a.ctx_->target()->same_shape(*b.ctx_->target()) && a.terms_ == b.terms_;
    }

    void require_same(const Form& o) const {
        if (ctx_ != o.ctx_ && !ctx_->target()->same_shape(*o.ctx_->target()))
            throw ContextMismatch("forms from different de Rham contexts");
    }

    static DPMonomial unit_monomial(const DeRhamContext& ctx) {
        return DPMonomial{std::vector<unsigned>(ctx.target()->num_ordinary(), 0),
                          std::vector<unsigned>(ctx.target()->num_divided(), 0)};
    }

private:
    static bool is_zero_scalar(const K& c) { return gammadelta::is_zero(c); }

    DeRhamContextPtr ctx_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Exterior differential

/// Partial derivative of a monomial along the g-th one-form generator:
/// x^a -> a x^{a-1}, gamma_n(y) -> gamma_{n-1}(y).
template <class K>
std::optional<std::pair<DPMonomial, K>> partial(const DeRhamContext& ctx, const DPMonomial& m, std::size_t g) {
    const auto& gen = ctx.generator(g);
    DPMonomial out = m;
    if (gen.divided) {
        if (m.divided[gen.index] == 0) return std::nullopt;
        out.divided[gen.index] -= 1;
        return std::make_pair(out, scalar_from<K>(1L, ctx.domain()));
    }
    const unsigned a = m.ordinary[gen.index];
    if (a == 0) return std::nullopt;
    out.ordinary[gen.index] -= 1;
    const K c = scalar_from<K>(static_cast<long>(a), ctx.domain());
    if (is_zero(c)) return std::nullopt;
    return std::make_pair(out, c);
}

/// d(f dg_S) = sum_g (df/dg) dg ^ dg_S.
template <class K>
Form<K> d(const Form<K>& f) {
    const auto& ctx = *f.context();
    Form<K> out(f.context());
    for (const auto& [key, c] : f.terms()) {
        for (std::size_t g = 0; g < ctx.num_generators(); ++g) {
            const WedgeMask bit = WedgeMask{1} << g;
            if (key.wedge & bit) continue;
            auto part = partial<K>(ctx, key.monomial, g);
            if (!part) continue;
            const int sign = std::popcount(key.wedge & (bit - 1)) % 2 == 0 ? 1 : -1;
            const K coeff = c * part->second;
            out.add_term(part->first, key.wedge | bit, sign > 0 ? coeff : -coeff);
        }
    }
    return out;
}

/// Every coefficient of the degree-q form f lies in I^[max(m - q, 0)].
template <class K>
bool hodge_fil_membership(const Form<K>& f, long m) {
    for (const auto& [key, c] : f.terms()) {
        const long need = std::max<long>(m - wedge_degree(key.wedge), 0);
        if (key.monomial.weight() < need) return false;
    }
    return true;
}

template <class K>
std::string to_string(const Form<K>& f) {
    const auto& ctx = *f.context();
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [key, c] : f.terms()) {
        std::string mono = key.monomial.is_one() ? std::string() : monomial_string(*ctx.target(), key.monomial);
        std::string w;
        for (std::size_t g = 0; g < ctx.num_generators(); ++g) {
            if (!(key.wedge & (WedgeMask{1} << g))) continue;
            if (!w.empty()) w += "^";
            w += ctx.generator_name(g);
        }
        if (mono.empty()) mono = w;
        else if (!w.empty()) mono += "*" + w;
        parts.emplace_back(to_string(c), mono);
    }
    return join_terms(parts);
}

// ---------------------------------------------------------------------------
// Weight-graded cohomology

/// Basis of the degree-q, weight-w piece: monomials of weight w - q times dg_S, |S| = q.
inline std::vector<FormKey> form_basis(const DeRhamContext& ctx, long w, int q) {
    if (ctx.has_base_variables()) throw Error("graded pieces need a field base without base variables");
    std::vector<FormKey> out;
    const long rest = w - q;
    if (rest < 0 || q < 0) return out;
    const std::size_t ng = ctx.num_generators();
    const auto& t = *ctx.target();
    const unsigned nord = static_cast<unsigned>(t.num_ordinary()), ndiv = static_cast<unsigned>(t.num_divided());
    std::vector<DPMonomial> monomials;
    for_each_composition(static_cast<unsigned>(rest), nord + ndiv, [&](const std::vector<unsigned>& e) {
        DPMonomial m{std::vector<unsigned>(e.begin(), e.begin() + nord), std::vector<unsigned>(e.begin() + nord, e.end())};
        monomials.push_back(std::move(m));
    });
    for (WedgeMask s = 0; s < (WedgeMask{1} << ng); ++s) {
        if (wedge_degree(s) != q) continue;
        for (const auto& m : monomials) out.push_back(FormKey{m, s});
    }
    return out;
}

namespace detail {

template <class K>
la::Matrix<K> differential_matrix(const DeRhamContextPtr& ctx, long w, int q) {
    const auto src = form_basis(*ctx, w, q);
    const auto dst = form_basis(*ctx, w, q + 1);
    std::map<FormKey, std::size_t, FormKeyOrder> row;
    for (const auto& k : dst) row.emplace(k, row.size());
    la::Matrix<K> m(dst.size(), src.size(), ctx->domain());
    for (std::size_t col = 0; col < src.size(); ++col) {
        Form<K> f(ctx);
        f.add_term(src[col].monomial, src[col].wedge, scalar_from<K>(1L, ctx->domain()));
        const Form<K> df = d(f);
        for (const auto& [key, c] : df.terms()) m.set(row.at(key), col, c);
    }
    return m;
}

template <class K>
long cohomology_rank_impl(const DeRhamContextPtr& ctx, long w, int q) {
    const long dim = static_cast<long>(form_basis(*ctx, w, q).size());
    const long out_rank = static_cast<long>(la::rank(differential_matrix<K>(ctx, w, q)));
    const long in_rank = q == 0 ? 0 : static_cast<long>(la::rank(differential_matrix<K>(ctx, w, q - 1)));
    return dim - out_rank - in_rank;
}

}  // namespace detail

inline void check_cohomology_preconditions(const DeRhamContext& ctx, long w) {
    if (!ctx.domain().is_field()) throw Error("cohomology ranks need a field of coefficients");
    if (w > ctx.target()->weight_bound()) throw TruncationOverflow("graded_cohomology weight", w, ctx.target()->weight_bound());
}

/// Rank of H^q in weight w: dim ker(d on the degree-q piece) - rank(d into it).
inline long graded_cohomology(const DeRhamContextPtr& ctx, long w, int q) {
    check_cohomology_preconditions(*ctx, w);
    if (ctx->domain().kind == CoeffDomain::Kind::prime_field) return detail::cohomology_rank_impl<Fp>(ctx, w, q);
    return detail::cohomology_rank_impl<Rational>(ctx, w, q);
}

/// H^0 in weight 0 has rank 1 and everything else vanishes up to the bound.
inline bool poincare_check(const DeRhamContextPtr& ctx, long weight_bound) {
    if (graded_cohomology(ctx, 0, 0) != 1) return false;
    for (long w = 0; w <= weight_bound; ++w)
        for (int q = 0; q <= static_cast<int>(ctx->num_generators()); ++q) {
            if (w == 0 && q == 0) continue;
            if (graded_cohomology(ctx, w, q) != 0) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// Inverse Cartier

/// f^{p-1} df for a degree-0 element f over F_p.
inline Form<Fp> inverse_cartier_one(const DeRhamContextPtr& ctx, const DPElement<Fp>& f) {
    const long p = ctx->domain().p;
    const auto F = Form<Fp>::function(ctx, f);
    return wedge(Form<Fp>::function(ctx, f.pow(static_cast<unsigned>(p - 1))), d(F));
}

/// Representative of C^{-1}(f dg_1 ^ ... ^ dg_q) = f^p prod g_i^{p-1} dg_i.
inline Form<Fp> inverse_cartier(const DeRhamContextPtr& ctx, const DPElement<Fp>& f,
                                const std::vector<DPElement<Fp>>& gs) {
    if (ctx->domain().kind != CoeffDomain::Kind::prime_field) throw Error("inverse_cartier needs F_p coefficients");
    const long p = ctx->domain().p;
    Form<Fp> out = Form<Fp>::function(ctx, f.pow(static_cast<unsigned>(p)));
    for (const auto& g : gs) out = wedge(out, inverse_cartier_one(ctx, g));
    return out;
}

struct CartierReport {
    long weight = 0;
    int degree = 0;
    long source_rank = 0;      // twisted Omega^q piece of weight weight/p (0 when p does not divide)
    long cohomology_rank = 0;  // H^q in this weight
    long image_rank = 0;       // rank of the images modulo coboundaries
    bool cocycles = true;
    bool pass() const { return cocycles && source_rank == cohomology_rank && image_rank == source_rank; }
};

/// The Cartier map on the weight-(weight/p) piece of Omega^q of a polynomial
/// ring over F_p, compared against H^q in the given weight.
inline CartierReport cartier_check(const DeRhamContextPtr& ctx, long weight, int q) {
    check_cohomology_preconditions(*ctx, weight);
    if (ctx->domain().kind != CoeffDomain::Kind::prime_field) throw Error("cartier_check needs F_p coefficients");
    if (ctx->target()->num_divided() != 0) throw Error("cartier_check expects a polynomial ring");
    const long p = ctx->domain().p;
    CartierReport rep;
    rep.weight = weight;
    rep.degree = q;
    rep.cohomology_rank = graded_cohomology(ctx, weight, q);
    if (weight % p != 0) return rep;

    const auto source = form_basis(*ctx, weight / p, q);
    rep.source_rank = static_cast<long>(source.size());
    const auto target = form_basis(*ctx, weight, q);
    std::map<FormKey, std::size_t, FormKeyOrder> row;
    for (const auto& k : target) row.emplace(k, row.size());

    const la::Matrix<Fp> boundaries = q == 0 ? la::Matrix<Fp>(target.size(), 0, ctx->domain())
                                             : detail::differential_matrix<Fp>(ctx, weight, q - 1);
    la::Matrix<Fp> images(target.size(), source.size(), ctx->domain());
    const Fp one(1, p);
    const auto& t = ctx->target();
    for (std::size_t col = 0; col < source.size(); ++col) {
        const auto& key = source[col];
        std::vector<DPElement<Fp>> gs;
        for (std::size_t g = 0; g < ctx->num_generators(); ++g)
            if (key.wedge & (WedgeMask{1} << g)) gs.push_back(DPElement<Fp>::ordinary(t, ctx->generator(g).index));
        const Form<Fp> image = inverse_cartier(ctx, DPElement<Fp>::monomial(t, key.monomial, one), gs);
        if (!d(image).is_zero()) rep.cocycles = false;
        for (const auto& [k, c] : image.terms()) images.set(row.at(k), col, c);
    }
    // columns of [boundaries | images]
    la::Matrix<Fp> both(target.size(), boundaries.cols() + images.cols(), ctx->domain());
    for (std::size_t r = 0; r < target.size(); ++r) {
        for (const auto& [c, v] : boundaries.row(r)) both.set(r, c, v);
        for (const auto& [c, v] : images.row(r)) both.set(r, boundaries.cols() + c, v);
    }
    rep.image_rank = static_cast<long>(la::rank(both)) - static_cast<long>(la::rank(boundaries));
    return rep;
}

struct IdentityCheck {
    bool exact = false;
    bool p_local = false;
    bool pass() const { return exact && p_local; }
};

/// (u+v)^{p-1} d(u+v) - u^{p-1} du - v^{p-1} dv = d(sum_{j=1}^{p-1} C(p,j)/p u^j v^{p-j}) over Q[u, v].
inline IdentityCheck cartier_additivity(long p) {
    const PrimeContext prime(p);
    auto t = make_pd_context({"u", "v"}, {}, CoeffDomain::rational(), 1);
    auto ctx = make_derham_context(t);
    using E = DPElement<Rational>;
    const E u = E::ordinary(t, 0), v = E::ordinary(t, 1);
    auto term = [&](const E& f) {
        return wedge(Form<Rational>::function(ctx, f.pow(static_cast<unsigned>(p - 1))), d(Form<Rational>::function(ctx, f)));
    };
    const Form<Rational> lhs = term(u + v) - term(u) - term(v);
    E anti(t);
    for (long j = 1; j < p; ++j)
        anti += (u.pow(static_cast<unsigned>(j)) * v.pow(static_cast<unsigned>(p - j)))
                    .scaled(Rational(binomial(static_cast<unsigned>(p), static_cast<unsigned>(j))) / p);
    IdentityCheck out;
    out.exact = lhs == d(Form<Rational>::function(ctx, anti));
    out.p_local = true;
    for (const auto& [m, c] : anti.terms())
        if (!is_p_local(c, prime)) out.p_local = false;
    return out;
}

/// (fg)^{p-1} d(fg) = f^p g^{p-1} dg + g^p f^{p-1} df.
inline bool cartier_leibniz(const DeRhamContextPtr& ctx, const DPElement<Fp>& f, const DPElement<Fp>& g) {
    const long p = ctx->domain().p;
    const auto lhs = inverse_cartier_one(ctx, f * g);
    const auto rhs = wedge(Form<Fp>::function(ctx, f.pow(static_cast<unsigned>(p))), inverse_cartier_one(ctx, g)) +
                     wedge(Form<Fp>::function(ctx, g.pow(static_cast<unsigned>(p))), inverse_cartier_one(ctx, f));
    return lhs == rhs;
}

}  // namespace gammadelta
