#pragma once

/**
 * @file deltaring.hpp
 * @brief Free delta-rings Z_(p){G} as polynomial rings in the tower variables
 *        delta^k(g), 0 <= k <= D.
 *
 * delta is computed from the axioms
 *
 *     delta(x + y) = delta(x) + delta(y) - sum_{0<k<p} C(p,k)/p x^k y^{p-k}
 *     delta(x y)   = x^p delta(y) + y^p delta(x) + p delta(x) delta(y)
 *     delta(c)     = (c - c^p) / p        for scalars c,
 *
 * splitting sums and products in halves. The Frobenius lift is the ring
 * endomorphism delta^k(g) -> delta^k(g)^p + p delta^{k+1}(g).
 */

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gammadelta/combinatorics.hpp"
#include "gammadelta/dpalg.hpp"
#include "gammadelta/poly.hpp"
#include "gammadelta/scalars.hpp"

namespace gammadelta {

class DeltaContext {
public:
    DeltaContext(std::vector<std::string> generators, long depth_bound, CoeffDomain domain, PrimeContext prime)
        : generators_(std::move(generators)), depth_bound_(depth_bound), domain_(domain), prime_(prime) {
        if (depth_bound_ < 0) throw ContextMismatch("depth bound must be >= 0");
        std::set<std::string> seen;
        for (const auto& g : generators_)
            if (g.empty() || !seen.insert(g).second)
                throw ContextMismatch("duplicate or empty generator name '" + g + "'");
        if (domain_.kind != CoeffDomain::Kind::rational && domain_.p != prime_.p())
            throw ContextMismatch("scalar domain and prime disagree");
    }

    const std::vector<std::string>& generators() const noexcept { return generators_; }
    long depth_bound() const noexcept { return depth_bound_; }
    const CoeffDomain& domain() const noexcept { return domain_; }
    const PrimeContext& prime() const noexcept { return prime_; }
    long p() const noexcept { return prime_.p(); }

    std::size_t num_vars() const noexcept { return generators_.size() * static_cast<std::size_t>(depth_bound_ + 1); }

    std::size_t var_index(std::size_t generator, long depth) const {
        if (depth < 0 || depth > depth_bound_)
            throw DepthExceeded("tower variable beyond the depth bound", depth, depth_bound_);
        return generator * static_cast<std::size_t>(depth_bound_ + 1) + static_cast<std::size_t>(depth);
    }
    std::size_t generator_of(std::size_t var) const { return var / static_cast<std::size_t>(depth_bound_ + 1); }
    long depth_of(std::size_t var) const { return static_cast<long>(var % static_cast<std::size_t>(depth_bound_ + 1)); }

    int generator_index(const std::string& name) const {
        auto it = std::find(generators_.begin(), generators_.end(), name);
        return it == generators_.end() ? -1 : static_cast<int>(it - generators_.begin());
    }

    /// "g", "d(g)", "d^k(g)".
    std::string var_name(std::size_t var) const {
        const auto& g = generators_.at(generator_of(var));
        const long k = depth_of(var);
        if (k == 0) return g;
        if (k == 1) return "d(" + g + ")";
        return "d^" + std::to_string(k) + "(" + g + ")";
    }

    bool same_shape(const DeltaContext& o) const {
        return generators_ == o.generators_ && depth_bound_ == o.depth_bound_ && domain_ == o.domain_ &&
               prime_ == o.prime_;
    }

private:
    std::vector<std::string> generators_;
    long depth_bound_;
    CoeffDomain domain_;
    PrimeContext prime_;
};

using DeltaContextPtr = std::shared_ptr<const DeltaContext>;

inline DeltaContextPtr make_delta_context(std::vector<std::string> generators, long depth_bound, long p,
                                          CoeffDomain::Kind kind = CoeffDomain::Kind::p_local) {
    PrimeContext prime(p);
    CoeffDomain dom = kind == CoeffDomain::Kind::rational ? CoeffDomain::rational()
                      : kind == CoeffDomain::Kind::p_local ? CoeffDomain::p_local(prime)
                                                           : CoeffDomain::prime_field(prime);
    return std::make_shared<const DeltaContext>(std::move(generators), depth_bound, dom, prime);
}

class DeltaElement {
public:
    explicit DeltaElement(DeltaContextPtr ctx) : ctx_(std::move(ctx)), poly_(ctx_->num_vars()) {}
    DeltaElement(DeltaContextPtr ctx, Poly<Rational> poly) : ctx_(std::move(ctx)), poly_(std::move(poly)) {
        if (poly_.nvars() != ctx_->num_vars()) throw ContextMismatch("polynomial has the wrong variable count");
    }

    static DeltaElement constant(DeltaContextPtr ctx, const Rational& c) {
        const auto n = ctx->num_vars();
        return DeltaElement(std::move(ctx), Poly<Rational>::constant(n, c));
    }

    /// delta^depth(generator).
    static DeltaElement tower(DeltaContextPtr ctx, std::size_t generator, long depth = 0, int power = 1) {
        const auto var = ctx->var_index(generator, depth);
        const auto n = ctx->num_vars();
        return DeltaElement(std::move(ctx), Poly<Rational>::variable(n, var, Rational(1), power));
    }

    static DeltaElement tower(DeltaContextPtr ctx, const std::string& generator, long depth = 0, int power = 1) {
        const int g = ctx->generator_index(generator);
        if (g < 0) throw ContextMismatch("unknown generator '" + generator + "'");
        return tower(std::move(ctx), static_cast<std::size_t>(g), depth, power);
    }

    const DeltaContextPtr& context() const noexcept { return ctx_; }
    const Poly<Rational>& poly() const noexcept { return poly_; }
    bool is_zero() const noexcept { return poly_.is_zero(); }
    std::size_t size() const noexcept { return poly_.size(); }

    DeltaElement& operator+=(const DeltaElement& o) {
        require_same(o);
        poly_ += o.poly_;
        return *this;
    }
    DeltaElement& operator-=(const DeltaElement& o) {
        require_same(o);
        poly_ -= o.poly_;
        return *this;
    }
    friend DeltaElement operator+(DeltaElement a, const DeltaElement& b) { return a += b; }
    friend DeltaElement operator-(DeltaElement a, const DeltaElement& b) { return a -= b; }
    DeltaElement operator-() const { return DeltaElement(ctx_, -poly_); }
    friend DeltaElement operator*(const DeltaElement& a, const DeltaElement& b) {
        a.require_same(b);
        return DeltaElement(a.ctx_, a.poly_ * b.poly_);
    }
    DeltaElement& operator*=(const DeltaElement& o) { return *this = *this * o; }
    DeltaElement scaled(const Rational& s) const { return DeltaElement(ctx_, poly_.scaled(s)); }
    DeltaElement pow(unsigned e) const { return DeltaElement(ctx_, poly_.pow(e, Rational(1))); }

    /// Largest tower depth occurring, or -1 for constants.
    long max_depth() const {
        long d = -1;
        for (const auto& [e, c] : poly_.terms())
            for (std::size_t v = 0; v < e.size(); ++v)
                if (e[v] != 0) d = std::max(d, ctx_->depth_of(v));
        return d;
    }

    bool all_coefficients_p_local() const {
        for (const auto& [e, c] : poly_.terms())
            if (!is_p_local(c, ctx_->prime())) return false;
        return true;
    }

    /// Degree in the tower variable delta^depth(generator).
    int degree_in(std::size_t generator, long depth) const { return poly_.degree_in(ctx_->var_index(generator, depth)); }

    /// Coefficient of delta^depth(generator)^power as an element of the same ring.
    DeltaElement coefficient_of(std::size_t generator, long depth, int power) const {
        return DeltaElement(ctx_, poly_.coefficient_of(ctx_->var_index(generator, depth), power));
    }

    friend bool operator==(const DeltaElement& a, const DeltaElement& b) {
        return a.ctx_->same_shape(*b.ctx_) && a.poly_ == b.poly_;
    }

    void require_same(const DeltaElement& o) const {
        if (ctx_ != o.ctx_ && !ctx_->same_shape(*o.ctx_))
            throw ContextMismatch("delta-ring elements from different contexts");
    }

private:
    DeltaContextPtr ctx_;
    Poly<Rational> poly_;
};

// ---------------------------------------------------------------------------
// Text form

/// Sorted view of polynomial terms: total degree ascending, then exponent
/// vectors lexicographically descending.
template <class K>
std::vector<std::pair<Exponents, K>> display_order(const Poly<K>& poly) {
    std::vector<std::pair<Exponents, K>> terms(poly.terms().begin(), poly.terms().end());
    auto degree = [](const Exponents& e) {
        long s = 0;
        for (int x : e) s += x;
        return s;
    };
    std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
        const long da = degree(a.first), db = degree(b.first);
        if (da != db) return da < db;
        return a.first > b.first;
    });
    return terms;
}

template <class K, class NameFn>
std::string poly_to_string(const Poly<K>& poly, NameFn&& var_name) {
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [e, c] : display_order(poly)) {
        std::string mono;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += var_name(v);
            if (e[v] != 1) mono += "^" + std::to_string(e[v]);
        }
        parts.emplace_back(to_string(c), mono);
    }
    return join_terms(parts);
}

inline std::string to_string(const DeltaElement& f) {
    const auto& ctx = *f.context();
    return poly_to_string(f.poly(), [&](std::size_t v) {
        const std::string name = ctx.var_name(v);
        return name;
    });
}

// ---------------------------------------------------------------------------
// delta and Frobenius

namespace detail {

inline Rational scalar_delta(const Rational& c, long p) {
    Rational cp;
    mpz_pow_ui(cp.get_num_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(p));
    mpz_pow_ui(cp.get_den_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(p));
    cp.canonicalize();
    return (c - cp) / p;
}

class DeltaEngine {
public:
    explicit DeltaEngine(const DeltaContext& ctx) : ctx_(ctx), p_(ctx.p()), n_(ctx.num_vars()) {}

    /// P(a, b) = ((a + b)^p - a^p - b^p) / p.
    Poly<Rational> sum_correction(const Poly<Rational>& a, const Poly<Rational>& b) const {
        Poly<Rational> out(n_);
        std::vector<Poly<Rational>> apow{Poly<Rational>::constant(n_, 1)}, bpow{Poly<Rational>::constant(n_, 1)};
        for (long k = 1; k < p_; ++k) {
            apow.push_back(apow.back() * a);
            bpow.push_back(bpow.back() * b);
        }
        for (long k = 1; k < p_; ++k)
            out += (apow[k] * bpow[p_ - k]).scaled(Rational(binomial(p_, k)) / p_);
        return out;
    }

    /// delta(a b) from delta(a), delta(b).
    Poly<Rational> product_rule(const Poly<Rational>& a, const Poly<Rational>& da, const Poly<Rational>& b,
                                const Poly<Rational>& db) const {
        return a.pow(p_, 1) * db + b.pow(p_, 1) * da + (da * db).scaled(p_);
    }

    Poly<Rational> delta_of_power(std::size_t var, int e) {
        auto key = std::make_pair(var, e);
        if (auto it = power_cache_.find(key); it != power_cache_.end()) return it->second;
        Poly<Rational> result(n_);
        if (e == 1) {
            const long k = ctx_.depth_of(var);
            if (k + 1 > ctx_.depth_bound())
                throw DepthExceeded("delta of " + ctx_.var_name(var), k + 1, ctx_.depth_bound());
            result = Poly<Rational>::variable(n_, var + 1, 1);
        } else {
            const int h = e / 2;
            const auto s = Poly<Rational>::variable(n_, var, 1, h);
            const auto ds = delta_of_power(var, h);
            result = product_rule(s, ds, s, ds);
            if (e % 2 == 1) {
                const auto t = Poly<Rational>::variable(n_, var, 1, 1);
                result = product_rule(s * s, result, t, delta_of_power(var, 1));
            }
        }
        power_cache_.emplace(key, result);
        return result;
    }

    /// delta of the monomial given as (variable, exponent) factors in [lo, hi).
    std::pair<Poly<Rational>, Poly<Rational>> delta_of_factors(const std::vector<std::pair<std::size_t, int>>& f,
                                                              std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) {
            return {Poly<Rational>::variable(n_, f[lo].first, 1, f[lo].second),
                    delta_of_power(f[lo].first, f[lo].second)};
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        auto [a, da] = delta_of_factors(f, lo, mid);
        auto [b, db] = delta_of_factors(f, mid, hi);
        return {a * b, product_rule(a, da, b, db)};
    }

    Poly<Rational> delta_of_term(const Exponents& e, const Rational& c) {
        std::vector<std::pair<std::size_t, int>> factors;
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] != 0) factors.emplace_back(v, e[v]);
        const auto dc = Poly<Rational>::constant(n_, scalar_delta(c, p_));
        if (factors.empty()) return dc;
        auto [m, dm] = delta_of_factors(factors, 0, factors.size());
        const auto cp = Poly<Rational>::constant(n_, c);
        return product_rule(cp, dc, m, dm);
    }

    /// (sum, delta(sum)) of terms [lo, hi).
    using TermIt = std::vector<std::pair<Exponents, Rational>>;
    std::pair<Poly<Rational>, Poly<Rational>> delta_of_sum(const TermIt& terms, std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) {
            Poly<Rational> t(n_);
            t.add_term(terms[lo].first, terms[lo].second);
            return {t, delta_of_term(terms[lo].first, terms[lo].second)};
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        auto [a, da] = delta_of_sum(terms, lo, mid);
        auto [b, db] = delta_of_sum(terms, mid, hi);
        Poly<Rational> d = da + db - sum_correction(a, b);
        return {a + b, std::move(d)};
    }

    Poly<Rational> delta(const Poly<Rational>& f) {
        if (f.is_zero()) return Poly<Rational>(n_);
        TermIt terms(f.terms().begin(), f.terms().end());
        return delta_of_sum(terms, 0, terms.size()).second;
    }

private:
    const DeltaContext& ctx_;
    long p_;
    std::size_t n_;
    std::map<std::pair<std::size_t, int>, Poly<Rational>> power_cache_;
};

inline void require_headroom(const DeltaElement& f, long needed, const char* what) {
    const long top = f.max_depth();
    if (top >= 0 && top + needed > f.context()->depth_bound())
        throw DepthExceeded(what, top + needed, f.context()->depth_bound());
}

}  // namespace detail

inline DeltaElement delta(const DeltaElement& f) {
    const auto& ctx = f.context();
    if (ctx->domain().kind == CoeffDomain::Kind::prime_field)
        throw NonPLocal("delta is undefined over a prime field (it divides by p)");
    detail::require_headroom(f, 1, "delta");
    detail::DeltaEngine engine(*ctx);
    return DeltaElement(ctx, engine.delta(f.poly()));
}

inline DeltaElement delta_n(const DeltaElement& f, unsigned n) {
    DeltaElement r = f;
    for (unsigned k = 0; k < n; ++k) r = delta(r);
    return r;
}

/// The Frobenius lift phi(x) = x^p + p delta(x), as a ring endomorphism.
inline DeltaElement frobenius(const DeltaElement& f) {
    const auto& ctx = f.context();
    detail::require_headroom(f, 1, "frobenius");
    const std::size_t n = ctx->num_vars();
    const long p = ctx->p();
    std::vector<Poly<Rational>> images;
    images.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto img = Poly<Rational>::variable(n, v, 1, static_cast<int>(p));
        if (ctx->depth_of(v) < ctx->depth_bound()) img += Poly<Rational>::variable(n, v + 1, Rational(p));
        images.push_back(std::move(img));
    }
    return DeltaElement(ctx, f.poly().substitute(images, n, 1));
}

inline DeltaElement frobenius_n(const DeltaElement& f, unsigned n) {
    DeltaElement r = f;
    for (unsigned k = 0; k < n; ++k) r = frobenius(r);
    return r;
}

/// The delta-ring map on free delta-rings induced by generator -> image:
/// delta^k(g) is sent to delta^k(assignment(g)). Generators without an
/// assignment are sent to the same-named generator of the target, which
/// must exist.
inline DeltaElement substitute(const DeltaElement& f, const DeltaContextPtr& target,
                               const std::map<std::string, DeltaElement>& assignment) {
    const auto& src = *f.context();
    if (src.p() != target->p()) throw ContextMismatch("substitute: primes differ");
    const long top = f.max_depth();
    std::vector<Poly<Rational>> images(src.num_vars(), Poly<Rational>(target->num_vars()));
    for (std::size_t g = 0; g < src.generators().size(); ++g) {
        const auto& name = src.generators()[g];
        DeltaElement image = assignment.count(name) ? assignment.at(name) : DeltaElement::tower(target, name);
        image.require_same(DeltaElement(target));
        for (long k = 0; k <= std::max(top, 0L); ++k) {
            if (k > 0) {
                if (top >= k) image = delta(image);
                else break;
            }
            images[src.var_index(g, k)] = image.poly();
        }
    }
    return DeltaElement(target, f.poly().substitute(images, target->num_vars(), 1));
}

// ---------------------------------------------------------------------------
// Explicit identities

/// delta(u^p) = sum_{k=1}^{p} C(p,k) u^{p(p-k)} p^{k-1} delta(u)^k, exactly.
inline bool verify_delta_power(const DeltaElement& u) {
    const long p = u.context()->p();
    const DeltaElement lhs = delta(u.pow(static_cast<unsigned>(p)));
    const DeltaElement du = delta(u);
    DeltaElement rhs(u.context());
    for (long k = 1; k <= p; ++k) {
        Rational coeff = Rational(binomial(p, k));
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1));
        coeff *= pk;
        rhs += (u.pow(static_cast<unsigned>(p * (p - k))) * du.pow(static_cast<unsigned>(k))).scaled(coeff);
    }
    return lhs == rhs;
}

struct DividedIdentityResult {
    DeltaElement lhs;
    DeltaElement rhs;
    bool equal = false;
    bool all_p_local = false;      // every coefficient of lhs lies in Z_(p)
    bool unit_top_numerator = false;  // y^{p^2} coefficient is (unit)/p^{p+1}, the rest p-local
    bool pass() const { return equal && unit_top_numerator; }
};

/// delta(y^p / p) in Q{y} from the axioms, against
/// (p^{p-1} - 1)/p^{p+1} y^{p^2} + y^{p(p-1)} delta(y) + sum_{k=0}^{p-2} p^{p-2-k} C(p,k) y^{kp} delta(y)^{p-k}.
///
/// With y free the y^{p^2} coefficient has a p-power denominator; it becomes
/// integral only once y^p/p is, so the check is that its numerator is a
/// p-adic unit and every other coefficient is p-local.
inline DividedIdentityResult delta_divided_identity(long p) {
    auto ctx = make_delta_context({"y"}, 2, p, CoeffDomain::Kind::rational);
    const auto y = DeltaElement::tower(ctx, 0, 0);
    const auto dy = DeltaElement::tower(ctx, 0, 1);
    const unsigned up = static_cast<unsigned>(p);
    const DeltaElement lhs = delta(y.pow(up).scaled(Rational(1, p)));

    Integer p_pm1, p_pp1;
    mpz_ui_pow_ui(p_pm1.get_mpz_t(), up, up - 1);
    mpz_ui_pow_ui(p_pp1.get_mpz_t(), up, up + 1);
    const DeltaElement top = y.pow(up * up);
    DeltaElement rhs = top.scaled(make_rational(p_pm1 - 1, p_pp1));
    rhs += y.pow(up * (up - 1)) * dy;
    for (unsigned k = 0; k + 2 <= up; ++k) {
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), up, up - 2 - k);
        rhs += (y.pow(k * up) * dy.pow(up - k)).scaled(Rational(pw * binomial(up, k)));
    }
    DividedIdentityResult out{lhs, rhs, lhs == rhs, lhs.all_coefficients_p_local(), false};
    const Exponents& top_exp = top.poly().terms().begin()->first;
    bool ok = true;
    for (const auto& [e, c] : lhs.poly().terms()) {
        if (e == top_exp) ok = ok && is_p_local(c * Rational(p_pp1), ctx->prime()) && vp(c * Rational(p_pp1), ctx->prime()) == 0;
        else ok = ok && is_p_local(c, ctx->prime());
    }
    out.unit_top_numerator = ok;
    return out;
}

/// delta^n(x) in Q[x, phi(x), ..., phi^n(x)], via delta(f) = (phi(f) - f^p)/p
/// with phi the index shift X_i -> X_{i+1}.
struct RationalNormalForm {
    unsigned n = 0;
    long p = 0;
    Poly<Rational> poly;  // variables X_0 = x, X_i = phi^i(x)
    long degree_x = 0;
    Rational leading;
    Rational expected_leading;
    bool degree_ok = false;
    bool leading_ok = false;
};

inline Poly<Rational> phi_shift(const Poly<Rational>& f) {
    Poly<Rational> r(f.nvars());
    for (const auto& [e, c] : f.terms()) {
        if (e.back() != 0) throw DepthExceeded("phi-shift past the last variable", static_cast<long>(e.size()),
                                               static_cast<long>(e.size()) - 1);
        Exponents s(e.size(), 0);
        for (std::size_t i = 0; i + 1 < e.size(); ++i) s[i + 1] = e[i];
        r.add_term(s, c);
    }
    return r;
}

/// D_k for k = 0..n, all in n+1 variables.
inline std::vector<Poly<Rational>> rational_delta_tower(long p, unsigned n) {
    const std::size_t nv = n + 1;
    std::vector<Poly<Rational>> out{Poly<Rational>::variable(nv, 0, 1)};
    for (unsigned k = 1; k <= n; ++k) {
        const auto& prev = out.back();
        out.push_back((phi_shift(prev) - prev.pow(static_cast<unsigned>(p), 1)).scaled(Rational(1, p)));
    }
    return out;
}

inline RationalNormalForm rational_normal_form(long p, unsigned n, long depth_bound) {
    if (static_cast<long>(n) > depth_bound)
        throw DepthExceeded("rational_normal_form", static_cast<long>(n), depth_bound);
    RationalNormalForm out;
    out.n = n;
    out.p = p;
    out.poly = rational_delta_tower(p, n).back();
    out.degree_x = out.poly.degree_in(0);
    Exponents lead(n + 1, 0);
    lead[0] = static_cast<int>(ipow(static_cast<unsigned long>(p), n));
    out.leading = out.poly.coefficient(lead);
    // (-1/p)^{(p^n - 1)/(p - 1)}
    const unsigned long e = (ipow(static_cast<unsigned long>(p), n) - 1) / static_cast<unsigned long>(p - 1);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(p), e);
    out.expected_leading = Rational(e % 2 == 0 ? 1 : -1) / Rational(den);
    out.degree_ok = out.degree_x == static_cast<long>(lead[0]);
    out.leading_ok = out.leading == out.expected_leading;
    return out;
}

}  // namespace gammadelta
