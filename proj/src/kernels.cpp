#include "qinv/kernels.hpp"

#include <algorithm>

namespace qinv::kernels {

namespace {

// Below this many output coefficients the thread start-up dominates.
constexpr std::size_t kParallelThreshold = 256;

std::vector<std::size_t> nonzero_positions(std::span<const mpz_class> a) {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0) nz.push_back(i);
    return nz;
}

}  // namespace

std::vector<mpz_class> convolve_serial(std::span<const mpz_class> a, std::span<const mpz_class> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<mpz_class> out(a.size() + b.size() - 1);
    for (std::size_t i : nonzero_positions(a)) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (sgn(b[j]) == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    return out;
}

std::vector<mpz_class> convolve_parallel(std::span<const mpz_class> a, std::span<const mpz_class> b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a.size() + b.size() - 1;
    std::vector<mpz_class> out(n);
    const auto nz = nonzero_positions(a);
    const auto len_b = static_cast<std::int64_t>(b.size());
    // Each output coefficient is owned by exactly one iteration, so no
    // synchronisation is needed and the summation order matches the
    // serial kernel term for term.
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k) {
        mpz_class acc;
        for (std::size_t i : nz) {
            const std::int64_t j = k - static_cast<std::int64_t>(i);
            if (j < 0) break;
            if (j >= len_b || sgn(b[j]) == 0) continue;
            mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
        }
        out[k] = std::move(acc);
    }
    return out;
}

std::vector<mpz_class> convolve(std::span<const mpz_class> a, std::span<const mpz_class> b, Exec exec) {
    if (exec == Exec::parallel && a.size() + b.size() >= kParallelThreshold && max_threads() > 1)
        return convolve_parallel(a, b);
    return convolve_serial(a, b);
}

std::vector<std::int64_t> convolve_mod_serial(std::span<const std::int64_t> a,
                                              std::span<const std::int64_t> b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
    }
    return out;
}

std::vector<std::int64_t> convolve_mod_parallel(std::span<const std::int64_t> a,
                                                std::span<const std::int64_t> b, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    const auto n = static_cast<std::int64_t>(a.size() + b.size() - 1);
    const auto la = static_cast<std::int64_t>(a.size());
    const auto lb = static_cast<std::int64_t>(b.size());
    std::vector<std::int64_t> out(n, 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) {
        std::int64_t acc = 0;
        const std::int64_t lo = std::max<std::int64_t>(0, k - lb + 1);
        const std::int64_t hi = std::min<std::int64_t>(la - 1, k);
        for (std::int64_t i = lo; i <= hi; ++i) acc = (acc + a[i] * b[k - i]) % p;
        out[k] = acc;
    }
    return out;
}

}  // namespace qinv::kernels
