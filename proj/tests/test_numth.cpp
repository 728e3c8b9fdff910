#include <numbers>

#include "doctest.h"
#include "qinv/numth.hpp"
#include "test_support.hpp"

using namespace qinv;

namespace {

mpq_class frac(std::int64_t a, std::int64_t b) {
    mpq_class q(a, b);
    q.canonicalize();
    return q;
}

// ((x)) evaluated directly from the definition with exact floors.
mpq_class sawtooth(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    if (x.get_den() == 1) return 0;
    return x - mpq_class(fl) - mpq_class(1, 2);
}

mpq_class dedekind_oracle(std::int64_t q, std::int64_t m) {
    mpq_class s = 0;
    for (std::int64_t k = 1; k < m; ++k) s += sawtooth(frac(k, m)) * sawtooth(frac(k * q, m));
    return s;
}

int euler_criterion(std::int64_t a, std::int64_t p) {
    const auto v = detail::pow_mod(a, (p - 1) / 2, p);
    return v == 0 ? 0 : (v == 1 ? 1 : -1);
}

}  // namespace

TEST_CASE("dedekind sums") {
    CHECK(dedekind_sum(1, 3) == mpq_class(1, 18));
    CHECK(dedekind_sum(7, 1) == 0);
    CHECK(dedekind_sum(1, 5) == mpq_class(1, 5));
    CHECK_THROWS_AS(dedekind_sum(2, 4), PreconditionError);
    for (std::int64_t m = 1; m <= 40; ++m) {
        CHECK(dedekind_sum(1, m) == frac((m - 1) * (m - 2), 12 * m));
        for (std::int64_t q = 1; q <= 40; ++q) {
            if (std::gcd(q, m) != 1) continue;
            CAPTURE(m);
            CAPTURE(q);
            CHECK(dedekind_sum(q, m) == dedekind_oracle(q, m));
            // reciprocity
            CHECK(dedekind_sum(q, m) + dedekind_sum(m, q) ==
                  mpq_class(-1, 4) + frac(m * m + q * q + 1, 12 * m * q));
            CHECK(dedekind_sum(q + 3 * m, m) == dedekind_sum(q, m));
        }
    }
}

TEST_CASE("jacobi symbol") {
    CHECK(jacobi(1, 9) == 1);
    CHECK(jacobi(2, 15) == 1);
    CHECK(jacobi(3, 9) == 0);
    CHECK_THROWS_AS(jacobi(3, 8), PreconditionError);
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 3; p <= 100; ++p)
        if (detail::is_prime(p)) primes.push_back(p);
    for (auto p : primes)
        for (std::int64_t a = -20; a <= 120; ++a) CHECK(jacobi(a, p) == euler_criterion(a, p));
    for (auto p : primes)
        for (auto q : primes) {
            if (p == q || p > 50 || q > 50) continue;
            const int sign = ((p - 1) * (q - 1) / 4) % 2 ? -1 : 1;
            CHECK(jacobi(p, q) * jacobi(q, p) == sign);
        }
    // multiplicative in n
    for (std::int64_t a = -10; a <= 30; ++a) CHECK(jacobi(a, 3 * 5 * 7) == jacobi(a, 3) * jacobi(a, 5) * jacobi(a, 7));
}

TEST_CASE("signature defects") {
    CHECK(defect_s3_to_lens(3, 1) == 2);
    CHECK(defect_s3_to_lens(1, 1) == 0);
    CHECK(defect_s3_to_lens(5, 1) == 12);
    CHECK(defect_lens_cover(1, 1, 3) == 2);
    CHECK(defect_lens_cover(1, 1, 1) == 0);
    // 12*6*s(1,6) = 72 * 5/18 = 20, s(1,2) = 0, divided by m = 2
    CHECK(defect_lens_cover(2, 1, 3) == 10);
    for (std::int64_t m = 1; m <= 9; ++m)
        for (std::int64_t p : {3, 5, 7})
            for (std::int64_t q = 1; q <= m * p; ++q) {
                if (std::gcd(q, m * p) != 1) continue;
                CHECK(defect_s3_to_lens(m * p, q) == defect_s3_to_lens(m, q) + m * defect_lens_cover(m, q, p));
            }
}

TEST_CASE("dedekind congruence") {
    CHECK(dedekind_congruence_check(1, 3));
    CHECK(dedekind_congruence_check(1, 1));
    for (std::int64_t k = 1; k <= 25; k += 2)
        for (std::int64_t q = 1; q < std::max<std::int64_t>(k, 2); ++q)
            if (std::gcd(q, k) == 1) CHECK(dedekind_congruence_check(q, k));
}

TEST_CASE("gauss sums") {
    CHECK(gauss_sum(1, 0, 2, 8) == CycElem::one(8) + make_root(8, 4, 1));
    CHECK(gauss_sum(1, 0, 1, 8).is_one());
    CHECK(gauss_sum(2, 0, 3, 24) == CycElem::one(24) + CycElem::from_integer(24, 2) * make_root(24, 3, 1));
    CHECK_THROWS_AS(gauss_sum(1, 0, 5, 8), OrderMismatch);
    for (std::int64_t g = 1; g <= 15; g += 2) {
        const std::int64_t n = 8 * g;
        CycElem expect = sqrt_int(g, n);
        if (g % 4 == 3) expect *= make_root(n, 4, 1);
        CHECK(gauss_sum(2, 0, g, n) == expect);
    }
}

TEST_CASE("siegel reciprocity") {
    const auto s = siegel_sides(1, 0, 2);
    CHECK(s.lhs == CycElem::one(16) + make_root(16, 4, 1));
    CHECK(s.rhs == s.lhs);
    CHECK_THROWS_AS(siegel_reciprocity_check(1, 0, 1), PreconditionError);
    for (std::int64_t a = 1; a <= 8; ++a)
        for (std::int64_t g = 1; g <= 8; ++g)
            for (std::int64_t b = 0; b <= 4; ++b) {
                if ((a * g + b) % 2) continue;
                CAPTURE(a);
                CAPTURE(b);
                CAPTURE(g);
                const auto sides = siegel_sides(a, b, g);
                CHECK(sides.lhs == sides.rhs);
                CHECK(qinv::testing::close(embed_complex(sides.lhs), embed_complex(sides.rhs)));
            }
}
