#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tlb {

using Int = boost::multiprecision::cpp_int;

// Binomial coefficient; zero outside 0 <= k <= n (including negative n).
inline Int binom(long n, long k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i; // always exact: r is a running binomial
    }
    return r;
}

inline Int int_pow(const Int& b, unsigned e) {
    Int r = 1, x = b;
    while (e) {
        if (e & 1)
            r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

} // namespace tlb
