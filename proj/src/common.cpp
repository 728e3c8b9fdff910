#include "qinv/common.hpp"

#ifdef QINV_HAVE_OPENMP
#include <omp.h>
#endif

namespace qinv {
namespace detail {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    if (n < 0) n = -n;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (auto p : prime_factors(n)) result = result / p * (p - 1);
    return result;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> lo, hi;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t result = 1 % m;
    base = floor_mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = result * base % m;
        base = base * base % m;
        exp >>= 1;
    }
    return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t g = m, x = 0, x1 = 1, a1 = floor_mod(a, m);
    while (a1 != 0) {
        std::int64_t q = g / a1;
        std::int64_t t = g - q * a1;
        g = a1;
        a1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return floor_mod(x, m);
}

}  // namespace detail

int max_threads() {
#ifdef QINV_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_num_threads(int n) {
#ifdef QINV_HAVE_OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

}  // namespace qinv
