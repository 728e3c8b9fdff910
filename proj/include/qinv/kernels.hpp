#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP version; both must return bit-identical results.

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "qinv/common.hpp"

namespace qinv::kernels {

// Plain product of two integer polynomials (ascending coefficients).
std::vector<mpz_class> convolve_serial(std::span<const mpz_class> a, std::span<const mpz_class> b);
std::vector<mpz_class> convolve_parallel(std::span<const mpz_class> a, std::span<const mpz_class> b);
std::vector<mpz_class> convolve(std::span<const mpz_class> a, std::span<const mpz_class> b,
                                Exec exec = Exec::parallel);

// Product modulo a small prime p.
std::vector<std::int64_t> convolve_mod_serial(std::span<const std::int64_t> a,
                                              std::span<const std::int64_t> b, std::int64_t p);
std::vector<std::int64_t> convolve_mod_parallel(std::span<const std::int64_t> a,
                                                std::span<const std::int64_t> b, std::int64_t p);

}  // namespace qinv::kernels
