#pragma once

// Sparse multivariate (Laurent) polynomials over an exact scalar type.
// Variables are indexed 0..nvars-1; exponent vectors are dense and may be
// negative where a caller models a localization.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "gammadelta/scalars.hpp"

namespace gammadelta {

using Exponents = std::vector<int>;

template <class K>
class Poly {
public:
    using TermMap = std::map<Exponents, K>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const K& c) {
        Poly r(nvars);
        r.add_term(Exponents(nvars, 0), c);
        return r;
    }

    static Poly variable(std::size_t nvars, std::size_t index, const K& one, int power = 1) {
        Poly r(nvars);
        Exponents e(nvars, 0);
        e.at(index) = power;
        r.add_term(std::move(e), one);
        return r;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const Exponents& e, const K& c) {
        if (gammadelta::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (gammadelta::is_zero(it->second)) terms_.erase(it);
        }
    }

    K coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K{} : it->second;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(std::max(a.nvars_, b.nvars_));
        Exponents e(r.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const K& s) const {
        Poly r(nvars_);
        if (gammadelta::is_zero(s)) return r;
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    Poly pow(unsigned e, const K& one) const {
        Poly result = constant(nvars_, one), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            e >>= 1;
            if (e > 0) base *= base;
        }
        return result;
    }

    int degree_in(std::size_t var) const {
        int d = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            if (first || e[var] > d) d = e[var];
            first = false;
        }
        return d;
    }

    bool uses_variable(std::size_t var) const {
        return std::any_of(terms_.begin(), terms_.end(),
                           [var](const auto& t) { return t.first[var] != 0; });
    }

    /// Coefficient of var^power, as a polynomial in the remaining variables.
    Poly coefficient_of(std::size_t var, int power) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] != power) continue;
            Exponents f = e;
            f[var] = 0;
            r.add_term(f, c);
        }
        return r;
    }

    long weighted_degree_min(const std::vector<long>& w) const { return weighted_extreme(w, true); }
    long weighted_degree_max(const std::vector<long>& w) const { return weighted_extreme(w, false); }

    bool is_homogeneous(const std::vector<long>& w, long degree) const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const auto& t) { return weight_of(t.first, w) == degree; });
    }

    static long weight_of(const Exponents& e, const std::vector<long>& w) {
        long s = 0;
        for (std::size_t i = 0; i < e.size(); ++i) s += static_cast<long>(e[i]) * w[i];
        return s;
    }

    template <class K2, class F>
    Poly<K2> map_coefficients(F&& f) const {
        Poly<K2> r(nvars_);
        for (const auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    /// Keeps only the terms accepted by the predicate.
    template <class Pred>
    Poly filtered(Pred&& keep) const {
        Poly r(nvars_);
        for (const auto& [e, c] : terms_)
            if (keep(e)) r.terms_.emplace(e, c);
        return r;
    }

    /// Ring homomorphism sending variable i to images[i]. Only non-negative
    /// exponents are supported.
    Poly substitute(const std::vector<Poly>& images, std::size_t target_nvars, const K& one) const {
        Poly r(target_nvars);
        std::map<std::pair<std::size_t, int>, Poly> powers;
        auto power_of = [&](std::size_t var, int k) -> const Poly& {
            auto key = std::make_pair(var, k);
            auto it = powers.find(key);
            if (it == powers.end()) it = powers.emplace(key, images.at(var).pow(k, one)).first;
            return it->second;
        };
        for (const auto& [e, c] : terms_) {
            Poly term = constant(target_nvars, c);
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] < 0) throw Error("substitute: negative exponent");
                if (e[i] > 0) term *= power_of(i, e[i]);
            }
            r += term;
        }
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

private:
    long weighted_extreme(const std::vector<long>& w, bool want_min) const {
        long best = 0;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            long x = weight_of(e, w);
            if (first || (want_min ? x < best : x > best)) best = x;
            first = false;
        }
        return best;
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

}  // namespace gammadelta
