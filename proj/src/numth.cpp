#include "qinv/numth.hpp"

#include <numeric>

namespace qinv {

using detail::floor_mod;

mpq_class dedekind_sum(std::int64_t q, std::int64_t m) {
    if (m < 1) throw PreconditionError("dedekind_sum: m must be positive");
    if (std::gcd(floor_mod(q, m), m) != 1 && m != 1)
        throw PreconditionError("dedekind_sum: gcd(q, m) != 1");
    // ((k/m)) ((kq/m)) = (2k - m)(2 r_k - m) / (4 m^2) with r_k = kq mod m.
    mpz_class acc = 0;
    const std::int64_t qq = floor_mod(q, m);
    for (std::int64_t k = 1; k < m; ++k) {
        const std::int64_t rk = static_cast<std::int64_t>(static_cast<__int128>(k) * qq % m);
        acc += mpz_class(static_cast<long>(2 * k - m)) * static_cast<long>(2 * rk - m);
    }
    mpq_class s(acc, mpz_class(4) * m * m);
    s.canonicalize();
    return s;
}

int jacobi(std::int64_t a, std::int64_t n) {
    if (n <= 0 || n % 2 == 0) throw PreconditionError("jacobi: n must be odd and positive");
    a = floor_mod(a, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const auto r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

namespace {

std::int64_t to_integer(const mpq_class& v, const char* what) {
    if (v.get_den() != 1) throw ConsistencyError(std::string(what) + " is not an integer: " + v.get_str());
    if (!v.get_num().fits_slong_p()) throw std::overflow_error(std::string(what) + " out of range");
    return v.get_num().get_si();
}

}  // namespace

std::int64_t defect_s3_to_lens(std::int64_t m, std::int64_t q) {
    return to_integer(mpq_class(12 * m) * dedekind_sum(q, m), "12 m s(q,m)");
}

std::int64_t defect_lens_cover(std::int64_t m, std::int64_t q, std::int64_t p) {
    if (p < 1) throw PreconditionError("defect_lens_cover: cover degree must be positive");
    const mpq_class upper = mpq_class(12 * m * p) * dedekind_sum(q, m * p);
    const mpq_class lower = mpq_class(12 * m) * dedekind_sum(q, m);
    return to_integer(mpq_class(upper - lower) / m, "3 def(L(m,q) -> L(mp,q))");
}

bool dedekind_congruence_check(std::int64_t q, std::int64_t k) {
    if (k < 1 || k % 2 == 0) throw PreconditionError("dedekind_congruence_check: k must be odd and positive");
    const std::int64_t lhs = defect_s3_to_lens(k, q);
    const std::int64_t rhs = k + 1 - 2 * jacobi(q, k);
    return floor_mod(lhs - rhs, 8) == 0;
}

CycElem gauss_sum(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n) {
    if (gamma < 1) throw PreconditionError("gauss_sum: gamma must be positive");
    if (n % (2 * gamma) != 0)
        throw OrderMismatch("gauss_sum: 2*gamma = " + std::to_string(2 * gamma) + " does not divide " +
                            std::to_string(n));
    const std::int64_t period = 2 * gamma, scale = n / period;
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    terms.reserve(gamma);
    for (std::int64_t k = 0; k < gamma; ++k) {
        const auto e = floor_mod(floor_mod(alpha * floor_mod(k * k, period), period) + beta * k, period);
        terms.emplace_back(e * scale, 1);
    }
    return CycElem::from_monomials(n, terms);
}

SiegelSides siegel_sides(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n) {
    if (alpha < 1 || gamma < 1) throw PreconditionError("siegel: alpha and gamma must be positive");
    if (floor_mod(alpha * gamma + beta, 2) != 0) throw PreconditionError("siegel: alpha*gamma + beta must be even");
    const std::int64_t base = 8 * alpha * gamma;
    if (n == 0) n = base;
    if (n % base != 0)
        throw PreconditionError("siegel: order " + std::to_string(n) + " is not a multiple of 8*alpha*gamma");

    CycElem lhs = gauss_sum(alpha, beta, gamma, n);

    // sum_{k<alpha} xi_{2 alpha}^{-(gamma k^2 + beta k)}
    CycElem inner = galois(gauss_sum(gamma, beta, alpha, n), -1);
    CycElem rhs = make_root(n, 8, 1) * make_root(n, base, -beta * beta) * sqrt_int(alpha * gamma, n) * inner;
    rhs *= mpq_class(1, alpha);
    return {std::move(lhs), std::move(rhs)};
}

bool siegel_reciprocity_check(std::int64_t alpha, std::int64_t beta, std::int64_t gamma, std::int64_t n) {
    const auto sides = siegel_sides(alpha, beta, gamma, n);
    return sides.lhs == sides.rhs;
}

}  // namespace qinv
