#pragma once

// Dedekind sums, Jacobi symbols, signature defects of lens space covers and
// generalized quadratic Gauss sums.

#include <cstdint>

#include <gmpxx.h>

#include "qinv/cyclo.hpp"

namespace qinv {

// s(q, m) = sum_{k=1}^{m-1} ((k/m)) ((kq/m)); requires m > 0, gcd(q, m) = 1.
mpq_class dedekind_sum(std::int64_t q, std::int64_t m);

// Jacobi symbol (a | n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n);

// 3 def(S^3 -> L(m,q)) = 12 m s(q,m), checked to be an integer.
std::int64_t defect_s3_to_lens(std::int64_t m, std::int64_t q);

// 3 def(L(m,q) -> L(mp,q)) = (12mp s(q,mp) - 12m s(q,m)) / m. The cover
// degree p may be any positive integer (1 gives the identity cover).
std::int64_t defect_lens_cover(std::int64_t m, std::int64_t q, std::int64_t p);

// Dedekind's congruence 12k s(q,k) = k + 1 - 2 (q|k) mod 8, k odd.
bool dedekind_congruence_check(std::int64_t q, std::int64_t k);

// sum_{k=0}^{gamma-1} xi_{2 gamma}^{alpha k^2 + beta k} in order n; 2 gamma | n.
CycElem gauss_sum(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n);

struct SiegelSides {
    CycElem lhs;
    CycElem rhs;
};

// Both sides of the reciprocity law for generalized Gauss sums
//   sum_{k<gamma} xi_{2gamma}^{alpha k^2 + beta k}
//     = xi_8 xi_{8 alpha gamma}^{-beta^2} sqrt(gamma/alpha) sum_{k<alpha} xi_{2alpha}^{-(gamma k^2 + beta k)}
// Requires alpha, gamma > 0 and alpha gamma + beta even. n = 0 picks the
// smallest admissible order, otherwise 8 alpha gamma must divide n.
SiegelSides siegel_sides(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n = 0);
bool siegel_reciprocity_check(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n = 0);

}  // namespace qinv
