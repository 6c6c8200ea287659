#pragma once

/**
 * @file scalars.hpp
 * @brief Exact coefficient arithmetic.
 *
 * Rationals are GMP rationals (always kept in lowest terms with a positive
 * denominator). Prime-field elements carry their modulus so that generic
 * polynomial code can be written once for both coefficient kinds.
 */

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gammadelta/errors.hpp"

namespace gammadelta {

using Integer = mpz_class;
using Rational = mpq_class;

// ---------------------------------------------------------------------------
// Primes

class PrimeContext {
public:
    explicit PrimeContext(long p) : p_(p) {
        if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
    }

    long p() const noexcept { return p_; }

    static bool is_prime(long n) noexcept {
        if (n < 2) return false;
        for (long k = 2; k * k <= n; ++k)
            if (n % k == 0) return false;
        return true;
    }

    friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

private:
    long p_;
};

// ---------------------------------------------------------------------------
// p-adic valuation

/// v_p of a rational; std::nullopt stands for +infinity (the valuation of 0).
using Valuation = std::optional<long>;

inline long vp_integer(Integer n, long p) {
    long v = 0;
    n = abs(n);
    Integer pp = p;
    while (n != 0 && n % pp == 0) {
        n /= pp;
        ++v;
    }
    return v;
}

inline Valuation vp(const Rational& q, const PrimeContext& ctx) {
    if (q == 0) return std::nullopt;
    return vp_integer(q.get_num(), ctx.p()) - vp_integer(q.get_den(), ctx.p());
}

inline bool is_p_local(const Rational& q, const PrimeContext& ctx) {
    // the denominator is positive, so v_p(q) >= 0 iff p does not divide it
    return q.get_den() % ctx.p() != 0;
}

// ---------------------------------------------------------------------------
// Prime field

/// Element of F_p. A default-constructed Fp is the zero of every prime field;
/// it adopts the modulus of the first operand it meets.
struct Fp {
    std::uint32_t v = 0;
    std::uint32_t p = 0;

    Fp() = default;
    Fp(long value, long modulus) : p(static_cast<std::uint32_t>(modulus)) {
        long r = value % modulus;
        if (r < 0) r += modulus;
        v = static_cast<std::uint32_t>(r);
    }

    std::uint32_t modulus(const Fp& o) const {
        if (p != 0 && o.p != 0 && p != o.p) throw ContextMismatch("mixing different prime fields");
        return p != 0 ? p : o.p;
    }

    Fp operator+(const Fp& o) const {
        Fp r;
        r.p = modulus(o);
        if (r.p == 0) return r;
        r.v = static_cast<std::uint32_t>((std::uint64_t{v} + o.v) % r.p);
        return r;
    }
    Fp operator-(const Fp& o) const {
        Fp r;
        r.p = modulus(o);
        if (r.p == 0) return r;
        r.v = static_cast<std::uint32_t>((std::uint64_t{v} + r.p - o.v) % r.p);
        return r;
    }
    Fp operator-() const {
        Fp r = *this;
        if (p != 0) r.v = (p - v) % p;
        return r;
    }
    Fp operator*(const Fp& o) const {
        Fp r;
        r.p = modulus(o);
        if (r.p == 0) return r;
        r.v = static_cast<std::uint32_t>((std::uint64_t{v} * o.v) % r.p);
        return r;
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }

    Fp pow(std::uint64_t e) const {
        if (p == 0) return Fp{};
        Fp result(1, p), base = *this;
        while (e > 0) {
            if (e & 1) result *= base;
            base *= base;
            e >>= 1;
        }
        return result;
    }

    Fp inverse() const {
        if (v == 0) throw ZeroElement("inverse of zero in F_p");
        return pow(p - 2);
    }

    Fp operator/(const Fp& o) const { return *this * o.inverse(); }

    friend bool operator==(const Fp& a, const Fp& b) { return a.v == b.v; }
};

/// Image of a p-local rational in F_p.
inline Fp mod_p(const Rational& q, const PrimeContext& ctx) {
    if (!is_p_local(q, ctx)) throw NonPLocal("mod_p: " + q.get_str() + " is not p-local");
    const long p = ctx.p();
    Integer num = q.get_num() % p;
    Integer den = q.get_den() % p;
    Fp n(num.get_si(), p), d(den.get_si(), p);
    return n * d.inverse();
}

// ---------------------------------------------------------------------------
// Coefficient domains

/// Which ring the coefficients of an algebra live in.
struct CoeffDomain {
    enum class Kind { rational, p_local, prime_field };

    Kind kind = Kind::rational;
    long p = 0;  // meaningful for p_local and prime_field

    static CoeffDomain rational() { return {Kind::rational, 0}; }
    static CoeffDomain p_local(const PrimeContext& ctx) { return {Kind::p_local, ctx.p()}; }
    static CoeffDomain prime_field(const PrimeContext& ctx) { return {Kind::prime_field, ctx.p()}; }

    bool is_field() const noexcept { return kind != Kind::p_local; }

    std::string name() const {
        switch (kind) {
            case Kind::rational: return "Q";
            case Kind::p_local: return "Z(" + std::to_string(p) + ")";
            case Kind::prime_field: return "F" + std::to_string(p);
        }
        return "?";
    }

    friend bool operator==(const CoeffDomain&, const CoeffDomain&) = default;
};

// Generic scalar interface shared by Rational and Fp.

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(const Fp& a) { return a.v == 0; }

inline Rational inverse(const Rational& q) {
    if (q == 0) throw ZeroElement("inverse of zero");
    return 1 / q;
}
inline Fp inverse(const Fp& a) { return a.inverse(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Fp& a) { return std::to_string(a.v); }

template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static Rational from_rational(const Rational& q, const CoeffDomain& dom) {
        if (dom.kind == CoeffDomain::Kind::p_local && !is_p_local(q, PrimeContext(dom.p)))
            throw NonPLocal(q.get_str() + " is not " + dom.name() + "-integral");
        return q;
    }
    static Rational from_int(long n, const CoeffDomain&) { return Rational(n); }
};

template <>
struct ScalarTraits<Fp> {
    static Fp from_rational(const Rational& q, const CoeffDomain& dom) {
        return mod_p(q, PrimeContext(dom.p));
    }
    static Fp from_int(long n, const CoeffDomain& dom) { return Fp(n, dom.p); }
};

template <class K>
K scalar_from(const Rational& q, const CoeffDomain& dom) {
    return ScalarTraits<K>::from_rational(q, dom);
}

template <class K>
K scalar_from(const Integer& n, const CoeffDomain& dom) {
    return ScalarTraits<K>::from_rational(Rational(n), dom);
}

template <class K>
K scalar_from(long n, const CoeffDomain& dom) {
    return ScalarTraits<K>::from_int(n, dom);
}

template <class K>
K scalar_pow(K base, unsigned long e, const CoeffDomain& dom) {
    K result = scalar_from<K>(1L, dom);
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Combinatorial coefficients

/// Binomial coefficient C(n, k) by Pascal recursion, memoized per thread.
inline const Integer& binomial(unsigned n, unsigned k) {
    thread_local std::vector<std::vector<Integer>> rows{{Integer(1)}};
    static const Integer zero(0);
    if (k > n) return zero;
    while (rows.size() <= n) {
        const auto& prev = rows.back();
        std::vector<Integer> row(prev.size() + 1);
        row.front() = 1;
        row.back() = 1;
        for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
        rows.push_back(std::move(row));
    }
    return rows[n][k];
}

inline Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Coefficient of gamma_{mn} in gamma_m(gamma_n(x)): (mn)! / (m! (n!)^m).
/// Computed as prod_{k=1}^{m} C(kn - 1, n - 1), which is manifestly integral.
inline Integer gamma_comp_coeff(unsigned m, unsigned n) {
    if (n == 0) throw Error("gamma_comp_coeff: n must be >= 1");
    Integer r = 1;
    for (unsigned k = 1; k <= m; ++k) r *= binomial(k * n - 1, n - 1);
    return r;
}

/// Multinomial coefficient (sum ks)! / prod ks!.
inline Integer multinomial(const std::vector<unsigned>& ks) {
    Integer r = 1;
    unsigned total = 0;
    for (unsigned k : ks) {
        total += k;
        r *= binomial(total, k);
    }
    return r;
}

/// num/den in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Serialization used in every JSON output: "num/den", or "num" when integral.
inline std::string scalar_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw Error("malformed rational '" + s + "'");
    if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace gammadelta
