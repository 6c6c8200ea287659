#pragma once

#include <functional>
#include <vector>

namespace gammadelta {

/// Calls f on every vector of `parts` non-negative integers summing to n,
/// in lexicographically decreasing order.
template <class F>
void for_each_composition(unsigned n, unsigned parts, F&& f) {
    if (parts == 0) {
        if (n == 0) f(std::vector<unsigned>{});
        return;
    }
    std::vector<unsigned> v(parts, 0);
    std::function<void(unsigned, unsigned)> rec = [&](unsigned pos, unsigned left) {
        if (pos + 1 == parts) {
            v[pos] = left;
            f(static_cast<const std::vector<unsigned>&>(v));
            return;
        }
        for (unsigned k = left + 1; k-- > 0;) {
            v[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, n);
}

/// Calls f on every vector of `parts` integers with 0 <= v[i] < bound[i].
template <class F>
void for_each_box_point(const std::vector<unsigned>& bound, F&& f) {
    std::vector<unsigned> v(bound.size(), 0);
    for (unsigned b : bound)
        if (b == 0) return;
    while (true) {
        f(static_cast<const std::vector<unsigned>&>(v));
        std::size_t i = 0;
        while (i < v.size()) {
            if (++v[i] < bound[i]) break;
            v[i] = 0;
            ++i;
        }
        if (i == v.size()) return;
    }
}

/// Base-p digits of n, least significant first.
inline std::vector<unsigned> base_p_digits(unsigned long n, unsigned p) {
    std::vector<unsigned> digits;
    while (n > 0) {
        digits.push_back(static_cast<unsigned>(n % p));
        n /= p;
    }
    return digits;
}

inline unsigned long ipow(unsigned long base, unsigned e) {
    unsigned long r = 1;
    while (e-- > 0) r *= base;
    return r;
}

}  // namespace gammadelta
