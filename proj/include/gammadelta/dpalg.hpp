#pragma once

/**
 * @file dpalg.hpp
 * @brief Divided-power polynomial algebras Gamma_{R[X]}(Y).
 *
 * An element is a finite sum of monomials X^a gamma_b(Y) with coefficients in
 * Q, Z_(p) or F_p. The weight of a monomial is the total divided index |b|;
 * ordinary exponents are unbounded. Multiplication follows
 *
 *     gamma_m(y) gamma_n(y) = C(m+n, m) gamma_{m+n}(y),
 *
 * and any product whose weight exceeds the context's bound raises
 * TruncationOverflow instead of being dropped.
 */

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gammadelta/combinatorics.hpp"
#include "gammadelta/exactla.hpp"
#include "gammadelta/poly.hpp"
#include "gammadelta/report.hpp"
#include "gammadelta/scalars.hpp"

namespace gammadelta {

// ---------------------------------------------------------------------------
// Context

class PDContext {
public:
    PDContext(std::vector<std::string> ordinary, std::vector<std::string> divided, CoeffDomain domain,
              long weight_bound)
        : ordinary_(std::move(ordinary)), divided_(std::move(divided)), domain_(domain),
          weight_bound_(weight_bound) {
        if (weight_bound_ < 0) throw ContextMismatch("weight bound must be >= 0");
        std::set<std::string> seen;
        for (const auto* list : {&ordinary_, &divided_})
            for (const auto& name : *list)
                if (name.empty() || !seen.insert(name).second)
                    throw ContextMismatch("duplicate or empty variable name '" + name + "'");
        if (domain_.kind != CoeffDomain::Kind::rational) PrimeContext check(domain_.p);
    }

    const std::vector<std::string>& ordinary_vars() const noexcept { return ordinary_; }
    const std::vector<std::string>& divided_vars() const noexcept { return divided_; }
    const CoeffDomain& domain() const noexcept { return domain_; }
    long weight_bound() const noexcept { return weight_bound_; }

    std::size_t num_ordinary() const noexcept { return ordinary_.size(); }
    std::size_t num_divided() const noexcept { return divided_.size(); }

    int ordinary_index(const std::string& name) const { return index_in(ordinary_, name); }
    int divided_index(const std::string& name) const { return index_in(divided_, name); }

    bool same_shape(const PDContext& o) const {
        return ordinary_ == o.ordinary_ && divided_ == o.divided_ && domain_ == o.domain_ &&
               weight_bound_ == o.weight_bound_;
    }

private:
    static int index_in(const std::vector<std::string>& v, const std::string& name) {
        auto it = std::find(v.begin(), v.end(), name);
        return it == v.end() ? -1 : static_cast<int>(it - v.begin());
    }

    std::vector<std::string> ordinary_;
    std::vector<std::string> divided_;
    CoeffDomain domain_;
    long weight_bound_;
};

using PDContextPtr = std::shared_ptr<const PDContext>;

inline PDContextPtr make_pd_context(std::vector<std::string> ordinary, std::vector<std::string> divided,
                                    CoeffDomain domain, long weight_bound) {
    return std::make_shared<const PDContext>(std::move(ordinary), std::move(divided), domain, weight_bound);
}

// ---------------------------------------------------------------------------
// Monomials

/// X^ordinary * prod gamma_{divided[j]}(y_j), dense over the context's variables.
struct DPMonomial {
    std::vector<unsigned> ordinary;
    std::vector<unsigned> divided;

    long weight() const {
        long w = 0;
        for (unsigned b : divided) w += b;
        return w;
    }

    long ordinary_degree() const {
        long w = 0;
        for (unsigned a : ordinary) w += a;
        return w;
    }

    bool is_one() const {
        return std::all_of(ordinary.begin(), ordinary.end(), [](unsigned a) { return a == 0; }) &&
               std::all_of(divided.begin(), divided.end(), [](unsigned b) { return b == 0; });
    }

    friend bool operator==(const DPMonomial&, const DPMonomial&) = default;
};

/// Canonical order: weight ascending, then divided and ordinary exponent
/// vectors lexicographically descending (so gamma_2(y1) precedes y1*y2).
struct DPMonomialOrder {
    bool operator()(const DPMonomial& a, const DPMonomial& b) const {
        const long wa = a.weight(), wb = b.weight();
        if (wa != wb) return wa < wb;
        if (a.divided != b.divided) return a.divided > b.divided;
        const long da = a.ordinary_degree(), db = b.ordinary_degree();
        if (da != db) return da < db;
        return a.ordinary > b.ordinary;
    }
};

// ---------------------------------------------------------------------------
// Elements

template <class K>
class DPElement {
public:
    using TermMap = std::map<DPMonomial, K, DPMonomialOrder>;

    explicit DPElement(PDContextPtr ctx) : ctx_(std::move(ctx)) {}

    static DPElement zero(PDContextPtr ctx) { return DPElement(std::move(ctx)); }

    static DPElement constant(PDContextPtr ctx, const K& c) {
        DPElement r(ctx);
        r.add_term(r.unit_monomial(), c);
        return r;
    }

    static DPElement one(PDContextPtr ctx) {
        const auto dom = ctx->domain();
        return constant(std::move(ctx), scalar_from<K>(1L, dom));
    }

    static DPElement ordinary(PDContextPtr ctx, std::size_t index, unsigned power = 1) {
        DPElement r(ctx);
        DPMonomial m = r.unit_monomial();
        m.ordinary.at(index) = power;
        r.add_term(m, r.one_scalar());
        return r;
    }

    /// gamma_n(y_index).
    static DPElement divided(PDContextPtr ctx, std::size_t index, unsigned n = 1) {
        DPElement r(ctx);
        DPMonomial m = r.unit_monomial();
        m.divided.at(index) = n;
        r.check_weight(m.weight(), "divided generator");
        r.add_term(m, r.one_scalar());
        return r;
    }

    static DPElement monomial(PDContextPtr ctx, const DPMonomial& m, const K& c) {
        DPElement r(ctx);
        r.check_weight(m.weight(), "monomial");
        r.add_term(m, c);
        return r;
    }

    const PDContextPtr& context() const noexcept { return ctx_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    K one_scalar() const { return scalar_from<K>(1L, ctx_->domain()); }

    DPMonomial unit_monomial() const {
        return DPMonomial{std::vector<unsigned>(ctx_->num_ordinary(), 0),
                          std::vector<unsigned>(ctx_->num_divided(), 0)};
    }

    void add_term(const DPMonomial& m, const K& c) {
        if (gammadelta::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (gammadelta::is_zero(it->second)) terms_.erase(it);
        }
    }

    K coefficient(const DPMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? K{} : it->second;
    }

    long min_weight() const {
        long w = 0;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (first || m.weight() < w) w = m.weight();
            first = false;
        }
        return w;
    }

    long max_weight() const {
        long w = 0;
        for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
        return w;
    }

    DPElement& operator+=(const DPElement& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    DPElement& operator-=(const DPElement& o) {
        require_same(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend DPElement operator+(DPElement a, const DPElement& b) { return a += b; }
    friend DPElement operator-(DPElement a, const DPElement& b) { return a -= b; }
    DPElement operator-() const {
        DPElement r(ctx_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    DPElement scaled(const K& s) const {
        DPElement r(ctx_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }

    /// Product of two monomials: ordinary exponents add, divided indices add
    /// with coefficient C(m+n, m) per variable.
    std::pair<DPMonomial, K> multiply_monomials(const DPMonomial& a, const DPMonomial& b) const {
        DPMonomial m = a;
        K coeff = one_scalar();
        for (std::size_t i = 0; i < m.ordinary.size(); ++i) m.ordinary[i] += b.ordinary[i];
        for (std::size_t j = 0; j < m.divided.size(); ++j) {
            if (a.divided[j] != 0 && b.divided[j] != 0)
                coeff = coeff * scalar_from<K>(binomial(a.divided[j] + b.divided[j], a.divided[j]),
                                               ctx_->domain());
            m.divided[j] += b.divided[j];
        }
        check_weight(m.weight(), "product");
        return {std::move(m), coeff};
    }

    friend DPElement operator*(const DPElement& a, const DPElement& b) {
        a.require_same(b);
        DPElement r(a.ctx_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                auto [m, k] = a.multiply_monomials(ma, mb);
                r.add_term(m, ca * cb * k);
            }
        }
        return r;
    }
    DPElement& operator*=(const DPElement& o) { return *this = *this * o; }

    DPElement pow(unsigned e) const {
        DPElement result = one(ctx_), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    friend bool operator==(const DPElement& a, const DPElement& b) {
        return a.ctx_->same_shape(*b.ctx_) && a.terms_ == b.terms_;
    }

    void check_weight(long w, const char* what) const {
        if (w > ctx_->weight_bound())
            throw TruncationOverflow(std::string("divided-power ") + what + " exceeds the weight bound", w,
                                     ctx_->weight_bound());
    }

    void require_same(const DPElement& o) const {
        if (ctx_ != o.ctx_ && !ctx_->same_shape(*o.ctx_))
            throw ContextMismatch("divided-power elements from different contexts");
    }

private:
    PDContextPtr ctx_;
    TermMap terms_;
};

// ---------------------------------------------------------------------------
// Text form

inline std::string monomial_string(const PDContext& ctx, const DPMonomial& m) {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < m.ordinary.size(); ++i) {
        if (m.ordinary[i] == 0) continue;
        factors.push_back(ctx.ordinary_vars()[i] +
                          (m.ordinary[i] > 1 ? "^" + std::to_string(m.ordinary[i]) : ""));
    }
    for (std::size_t j = 0; j < m.divided.size(); ++j) {
        if (m.divided[j] == 0) continue;
        if (m.divided[j] == 1)
            factors.push_back(ctx.divided_vars()[j]);
        else
            factors.push_back("g_" + std::to_string(m.divided[j]) + "(" + ctx.divided_vars()[j] + ")");
    }
    std::string s;
    for (std::size_t k = 0; k < factors.size(); ++k) s += (k ? "*" : "") + factors[k];
    return s;
}

/// Joins signed terms "c*m" into "a + b - c" form; an empty list prints as "0".
inline std::string join_terms(const std::vector<std::pair<std::string, std::string>>& coeff_and_monomial) {
    if (coeff_and_monomial.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [coeff, mono] : coeff_and_monomial) {
        std::string c = coeff;
        bool negative = !c.empty() && c[0] == '-';
        if (negative) c.erase(0, 1);
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (mono.empty())
            out += c;
        else if (c == "1")
            out += mono;
        else
            out += c + "*" + mono;
    }
    return out;
}

template <class K>
std::string to_string(const DPElement<K>& f) {
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [m, c] : f.terms()) parts.emplace_back(to_string(c), monomial_string(*f.context(), m));
    return join_terms(parts);
}

// ---------------------------------------------------------------------------
// Divided powers

namespace detail {

/// gamma_a of the single term c * m, extracting the least divided variable.
template <class K>
DPElement<K> divided_power_of_term(unsigned a, const DPMonomial& m, const K& c, const PDContextPtr& ctx) {
    const auto dom = ctx->domain();
    if (a == 0) return DPElement<K>::one(ctx);
    std::size_t y = m.divided.size();
    for (std::size_t j = 0; j < m.divided.size(); ++j) {
        if (m.divided[j] > 0) {
            y = j;
            break;
        }
    }
    if (y == m.divided.size()) throw NotInIdeal("gamma_n of a weight-0 monomial");
    const unsigned b = m.divided[y];
    DPMonomial rest = m;
    rest.divided[y] = 0;
    DPElement<K> probe(ctx);
    probe.check_weight(static_cast<long>(a) * m.weight(), "gamma_n");
    // gamma_a(c u gamma_b(y)) = c^a u^a gamma_a(gamma_b(y)), gamma_a(gamma_b(y)) = coeff * gamma_{ab}(y)
    DPElement<K> u_pow = DPElement<K>::monomial(ctx, rest, probe.one_scalar()).pow(a);
    const K scale = scalar_pow<K>(c, a, dom) * scalar_from<K>(gamma_comp_coeff(a, b), dom);
    return (u_pow * DPElement<K>::divided(ctx, y, a * b)).scaled(scale);
}

}  // namespace detail

/// gamma_n(f) for f in the divided-power ideal (every monomial of weight >= 1).
template <class K>
DPElement<K> divided_power(unsigned n, const DPElement<K>& f) {
    const auto& ctx = f.context();
    if (n == 0) return DPElement<K>::one(ctx);
    for (const auto& [m, c] : f.terms())
        if (m.weight() == 0) throw NotInIdeal("gamma_n applied outside the divided-power ideal");
    if (f.is_zero()) return DPElement<K>::zero(ctx);
    f.check_weight(static_cast<long>(n) * f.min_weight(), "gamma_n");

    // gammas[k] = gamma_k(sum of the terms folded so far), for k <= n
    std::vector<DPElement<K>> gammas;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        std::vector<DPElement<K>> term_gammas;
        for (unsigned k = 0; k <= n; ++k) term_gammas.push_back(detail::divided_power_of_term(k, m, c, ctx));
        if (first) {
            gammas = std::move(term_gammas);
            first = false;
            continue;
        }
        std::vector<DPElement<K>> next(n + 1, DPElement<K>::zero(ctx));
        for (unsigned k = 0; k <= n; ++k)
            for (unsigned i = 0; i <= k; ++i) next[k] += gammas[i] * term_gammas[k - i];
        gammas = std::move(next);
    }
    return gammas[n];
}

/// Largest n with f in I^[n]: the minimum weight over the monomials of f.
template <class K>
long pd_filtration_weight(const DPElement<K>& f) {
    if (f.is_zero()) throw ZeroElement("pd_filtration_weight of zero");
    return f.min_weight();
}

// ---------------------------------------------------------------------------
// Graded pieces at standard pairs

enum class Filtration { pd, adic };

/// All divided monomials gamma_b(Y) (ordinary part trivial) of exact weight n.
inline std::vector<DPMonomial> divided_monomials_of_weight(const PDContext& ctx, unsigned n) {
    std::vector<DPMonomial> out;
    for_each_composition(n, static_cast<unsigned>(ctx.num_divided()), [&](const std::vector<unsigned>& b) {
        out.push_back(DPMonomial{std::vector<unsigned>(ctx.num_ordinary(), 0), b});
    });
    return out;
}

namespace detail {

template <class K>
RankCheck gr_rank_impl(const PDContextPtr& ctx, Filtration filtration, unsigned n) {
    const unsigned r = static_cast<unsigned>(ctx->num_divided());
    const auto dom = ctx->domain();
    const K one = scalar_from<K>(1L, dom);
    RankCheck out;
    out.expected = r == 0 ? (n == 0 ? 1 : 0) : binomial(n + r - 1, r - 1).get_si();

    if (filtration == Filtration::pd) {
        // Spanning set of I^[n] / I^[n+1]: products gamma_{i_1}(y_{j_1}) ... with indices
        // summing to n. Each product is rewritten in the monomial basis of weight n.
        const auto basis = divided_monomials_of_weight(*ctx, n);
        std::vector<DPElement<K>> products;
        std::function<void(unsigned, unsigned, DPElement<K>)> rec = [&](unsigned var, unsigned left,
                                                                         DPElement<K> acc) {
            if (left == 0) {
                products.push_back(acc);
                return;
            }
            if (var == r) return;
            for (unsigned i = 0; i <= left; ++i) {
                // for each split, either take gamma_i(y_var) whole or as gamma_1^i
                DPElement<K> factor = DPElement<K>::divided(ctx, var, i);
                rec(var + 1, left - i, acc * factor);
                if (i >= 2) rec(var + 1, left - i, acc * DPElement<K>::divided(ctx, var, 1).pow(i));
            }
        };
        rec(0, n, DPElement<K>::one(ctx));
        la::Matrix<K> mat(products.size(), basis.size(), dom);
        for (std::size_t row = 0; row < products.size(); ++row)
            for (std::size_t col = 0; col < basis.size(); ++col)
                mat.set(row, col, products[row].coefficient(basis[col]));
        out.rank = static_cast<long>(la::rank(mat));
    } else {
        // (Z[X,Y], (Y)): gr^n = (Y)^n / (Y)^{n+1}, spanned by products of n generators y_j.
        std::map<Exponents, std::size_t> column;
        std::vector<Poly<K>> products;
        std::function<void(unsigned, unsigned, Poly<K>)> rec = [&](unsigned first_var, unsigned left, Poly<K> acc) {
            if (left == 0) {
                products.push_back(acc);
                return;
            }
            for (unsigned v = first_var; v < r; ++v) rec(v, left - 1, acc * Poly<K>::variable(r, v, one));
        };
        rec(0, n, Poly<K>::constant(r, one));
        for (const auto& prod : products)
            for (const auto& [e, c] : prod.terms()) column.try_emplace(e, column.size());
        la::Matrix<K> mat(products.size(), column.size(), dom);
        for (std::size_t row = 0; row < products.size(); ++row)
            for (const auto& [e, c] : products[row].terms()) mat.set(row, column.at(e), c);
        out.rank = static_cast<long>(la::rank(mat));
    }
    out.pass = out.rank == out.expected;
    return out;
}

}  // namespace detail

/// Rank of gr^n of the PD or adic filtration at the standard pair, against
/// C(n+r-1, r-1), the rank of Gamma^n (resp. Sym^n) of a free module of rank r.
inline RankCheck gr_rank(const PDContextPtr& ctx, Filtration filtration, long n) {
    if (n < 0) throw Error("gr_rank: negative index");
    if (n > ctx->weight_bound())
        throw TruncationOverflow("gr_rank index exceeds the weight bound", n, ctx->weight_bound());
    if (ctx->domain().kind == CoeffDomain::Kind::prime_field)
        return detail::gr_rank_impl<Fp>(ctx, filtration, static_cast<unsigned>(n));
    return detail::gr_rank_impl<Rational>(ctx, filtration, static_cast<unsigned>(n));
}

// ---------------------------------------------------------------------------
// Conjugate filtration on Gamma_{F_p[X]}(Y)

/// Conjugate filtration of the standard PD pair in characteristic p.
///
/// Fil^{-j} is generated over F_p[Y]/(Y^p) by the products prod gamma_{k_l p}(y_l)
/// with sum k_l <= j. The F_p-span of Fil^{-j} is computed inside the algebra
/// (products y^a gamma_{kp}(y), a < p, via multiplication); gr^{-j} then has
/// rank (dim Fil^{-j} - dim Fil^{-(j-1)}) / p^r over F_p[Y]/(Y^p), which must be
/// C(j+r-1, r-1). The span is also compared against the monomials gamma_b with
/// sum floor(b_l/p) <= j.
inline FiltrationReport conj_fil_pd(const PDContextPtr& ctx, long i) {
    if (ctx->domain().kind != CoeffDomain::Kind::prime_field)
        throw ContextMismatch("conj_fil_pd needs an F_p coefficient domain");
    const unsigned p = static_cast<unsigned>(ctx->domain().p);
    const unsigned r = static_cast<unsigned>(ctx->num_divided());
    // heaviest element used: prod y_l^{p-1} gamma_{k_l p}(y_l) with sum k_l = i
    const long needed = static_cast<long>(r) * (p - 1) + i * static_cast<long>(p);
    if (i < 0 || needed > ctx->weight_bound())
        throw TruncationOverflow("conjugate filtration window exceeds the weight bound", needed,
                                 ctx->weight_bound());
    using E = DPElement<Fp>;
    const Fp one(1, p);

    // column index of every gamma_b with all b_l < (i+1) p
    std::vector<unsigned> box(r, static_cast<unsigned>((i + 1) * p));
    std::map<std::vector<unsigned>, std::size_t> column;
    for_each_box_point(box, [&](const std::vector<unsigned>& b) { column.emplace(b, column.size()); });

    auto to_row = [&](const E& f, la::Matrix<Fp>& m, std::size_t row) {
        for (const auto& [mono, c] : f.terms()) m.set(row, column.at(mono.divided), c);
    };

    FiltrationReport report;
    report.name = "conj-fil-pd";
    std::size_t previous_dim = 0;
    const unsigned long fiber = ipow(p, r);
    for (long j = 0; j <= i; ++j) {
        GradedPiece piece;
        piece.index = -j;
        piece.expected = r == 0 ? (j == 0 ? 1 : 0) : binomial(static_cast<unsigned>(j) + r - 1, r - 1).get_si();

        std::vector<E> span;
        for (unsigned total = 0; total <= j; ++total) {
            for_each_composition(total, r, [&](const std::vector<unsigned>& k) {
                E gen = E::one(ctx);
                for (unsigned l = 0; l < r; ++l)
                    if (k[l] > 0) gen *= E::divided(ctx, l, k[l] * p);
                if (static_cast<long>(total) == j) piece.generators.push_back(to_string(gen));
                std::vector<unsigned> small(r, p);
                for_each_box_point(small, [&](const std::vector<unsigned>& a) {
                    E elt = gen;
                    for (unsigned l = 0; l < r; ++l)
                        if (a[l] > 0) elt *= E::divided(ctx, l, 1).pow(a[l]);
                    span.push_back(elt);
                });
            });
        }
        la::Matrix<Fp> mat(span.size(), column.size(), ctx->domain());
        for (std::size_t row = 0; row < span.size(); ++row) to_row(span[row], mat, row);
        const std::size_t dim = la::rank(mat);

        // the expected span: gamma_b with sum floor(b_l / p) <= j
        std::vector<std::size_t> target_cols;
        for (const auto& [b, col] : column) {
            unsigned s = 0;
            for (unsigned x : b) s += x / p;
            if (s <= j) target_cols.push_back(col);
        }
        la::Matrix<Fp> target(target_cols.size(), column.size(), ctx->domain());
        for (std::size_t row = 0; row < target_cols.size(); ++row) target.set(row, target_cols[row], one);
        const bool same_span = dim == target_cols.size() && la::rank(mat.stacked(target)) == dim;

        const std::size_t delta = dim - previous_dim;
        piece.rank = delta % fiber == 0 ? static_cast<long>(delta / fiber) : -1;
        piece.pass = same_span && piece.rank == piece.expected &&
                     static_cast<long>(piece.generators.size()) == piece.expected;
        previous_dim = dim;
        report.pieces.push_back(std::move(piece));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Mod-p basis change for a single divided variable

struct BasisChange {
    la::Matrix<Fp> matrix;
    bool invertible = false;
};

/// Change of basis between {gamma_n(y)} and {y^{a0} gamma_{pm}(y) : n = a0 + pm, a0 < p}
/// for n = 0..bound over F_p; row n holds y^{a0} gamma_{pm}(y) in the gamma basis.
inline BasisChange mod_p_basis_change(const PrimeContext& prime, long bound) {
    const unsigned p = static_cast<unsigned>(prime.p());
    auto ctx = make_pd_context({}, {"y"}, CoeffDomain::prime_field(prime), bound);
    using E = DPElement<Fp>;
    const std::size_t n_basis = static_cast<std::size_t>(bound) + 1;
    BasisChange out{la::Matrix<Fp>(n_basis, n_basis, ctx->domain()), true};
    for (unsigned n = 0; n <= bound; ++n) {
        const unsigned a0 = n % p, m = n / p;
        E elt = E::divided(ctx, 0, 1).pow(a0) * E::divided(ctx, 0, p * m);
        for (const auto& [mono, c] : elt.terms()) out.matrix.set(n, mono.divided[0], c);
        if (is_zero(out.matrix.at(n, n))) out.invertible = false;
    }
    out.invertible = out.invertible && la::rank(out.matrix) == n_basis;
    return out;
}

}  // namespace gammadelta
