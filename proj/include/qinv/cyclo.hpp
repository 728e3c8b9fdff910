#pragma once

// Exact arithmetic in Z[1/D, xi_N], xi_N = exp(2 pi i / N).
//
// Elements are stored in the power basis {xi_N^j : 0 <= j < phi(N)} with
// integer numerators over one positive common denominator, reduced modulo
// the N-th cyclotomic polynomial. The representation is canonical: equal
// elements of equal order have identical numerators and denominator.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"
#include "qinv/common.hpp"

namespace qinv {

// Dense integer polynomial, ascending coefficients.
struct IntPolynomial {
    std::vector<std::int64_t> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool operator==(const IntPolynomial&) const = default;
};

// Phi_N by exact division of x^N - 1 by the product of Phi_d over the proper
// divisors d of N. Results are cached.
IntPolynomial cyclotomic_poly(std::int64_t n);

// Per-order reduction data, shared by every element of that order. Rings are
// created on first use and live for the whole program.
struct CycloRing {
    std::int64_t order = 1;
    std::int64_t phi = 1;
    // Non-leading coefficients of Phi_N as (index, value) pairs.
    std::vector<std::pair<std::int64_t, std::int64_t>> low_terms;

    static const CycloRing& get(std::int64_t order);

    // Reduces poly (any length, ascending) modulo Phi_N, leaving phi entries.
    void reduce(std::vector<mpz_class>& poly) const;
};

class ModPElem;

class CycElem {
public:
    CycElem();  // zero of order 1

    static CycElem zero(std::int64_t order);
    static CycElem one(std::int64_t order);
    static CycElem from_integer(std::int64_t order, const mpz_class& v);
    static CycElem from_rational(std::int64_t order, const mpq_class& v);
    // Coefficients of xi_N^j for j < coeffs.size(); any length, reduced here.
    static CycElem from_coeffs(std::int64_t order, const std::vector<mpq_class>& coeffs);
    // numerators / denominator, any length, reduced here.
    static CycElem from_numerators(std::int64_t order, std::vector<mpz_class> nums,
                                   mpz_class den = 1);
    // Sum of c * xi_N^e over the given (e, c) terms; exponents taken mod N.
    static CycElem from_monomials(std::int64_t order,
                                  const std::vector<std::pair<std::int64_t, std::int64_t>>& terms);

    std::int64_t order() const { return ring_->order; }
    std::int64_t dim() const { return ring_->phi; }
    const CycloRing& ring() const { return *ring_; }

    mpq_class coeff(std::int64_t j) const;
    std::vector<mpq_class> coeffs() const;
    const std::vector<mpz_class>& numerators() const { return num_; }
    const mpz_class& denominator() const { return den_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_integral() const { return den_ == 1; }
    // Rational value if the element lies in Q.
    std::optional<mpq_class> as_rational() const;
    std::size_t nonzero_terms() const;

    CycElem operator-() const;
    CycElem& operator+=(const CycElem& o);
    CycElem& operator-=(const CycElem& o);
    CycElem& operator*=(const CycElem& o);
    CycElem& operator*=(const mpq_class& s);

    // Mixed orders are lifted to their lcm.
    friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
    friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
    friend CycElem operator*(const CycElem& a, const CycElem& b);
    friend CycElem operator*(CycElem a, const mpq_class& s) { return a *= s; }
    friend CycElem operator*(const mpq_class& s, CycElem a) { return a *= s; }
    friend bool operator==(const CycElem& a, const CycElem& b);

private:
    CycElem(const CycloRing* ring, std::vector<mpz_class> num, mpz_class den);
    void normalize();
    static CycElem multiply_same_order(const CycElem& a, const CycElem& b);

    const CycloRing* ring_;
    std::vector<mpz_class> num_;
    mpz_class den_;

    friend CycElem lift(const CycElem& a, std::int64_t order);
    friend CycElem galois(const CycElem& a, std::int64_t k);
};

// Re-expresses a in order n; requires a.order() | n.
CycElem lift(const CycElem& a, std::int64_t order);

enum class ArithOp { add, sub, mul };

// Strict form of the ring operations: operands must share an order.
CycElem arith(const CycElem& a, const CycElem& b, ArithOp op);

// Square-and-multiply. Negative exponents invert first (throws
// NotInvertible for zero).
CycElem power(const CycElem& a, std::int64_t e);

// Inverse in Q(xi_N) via the extended Euclidean algorithm over Q[x].
CycElem inverse(const CycElem& a);

// xi_N -> xi_N^k; requires gcd(k, N) == 1.
CycElem galois(const CycElem& a, std::int64_t k);
CycElem conjugate(const CycElem& a);

// xi_a^k expressed in order n; requires a | n.
CycElem make_root(std::int64_t n, std::int64_t a, std::int64_t k);

// Positive real square root of d in Z[xi_n]. Requires the conductor of
// Q(sqrt d) to divide n (8d | n always suffices).
CycElem sqrt_int(std::int64_t d, std::int64_t n);

// The set of primes dividing the denominator of a.
std::vector<std::int64_t> denominator_primes(const CycElem& a);

// Image of a in F_p[x] / Phi_N.
class ModPElem {
public:
    ModPElem(std::int64_t order, std::int64_t p, std::vector<std::int64_t> residues);

    static ModPElem one(std::int64_t order, std::int64_t p);

    std::int64_t order() const { return order_; }
    std::int64_t prime() const { return p_; }
    const std::vector<std::int64_t>& residues() const { return res_; }
    bool is_zero() const;

    ModPElem operator+(const ModPElem& o) const;
    ModPElem operator-(const ModPElem& o) const;
    ModPElem operator*(const ModPElem& o) const;
    bool operator==(const ModPElem& o) const = default;

    ModPElem pow(std::int64_t e) const;
    // x -> x^k on the residue ring; gcd(k, N) == 1.
    ModPElem galois(std::int64_t k) const;

private:
    void check_compatible(const ModPElem& o) const;
    std::int64_t order_;
    std::int64_t p_;
    std::vector<std::int64_t> res_;
};

// Throws NotTestableModP when p divides the denominator.
ModPElem reduce_mod_p(const CycElem& a, std::int64_t p);
bool eq_mod_p(const CycElem& a, const CycElem& b, std::int64_t p);

// a^p == sigma_p(a) mod p. Requires p odd prime, p not dividing the order.
bool frobenius_check(const CycElem& a, std::int64_t p);

// Expresses a in the subring generated by xi_t (t | a.order()), or nullopt
// when a is not in that subring.
std::optional<CycElem> descend(const CycElem& a, std::int64_t t);

// Numeric image under xi_N -> exp(2 pi i / N). Test oracle only.
std::complex<double> embed_complex(const CycElem& a);

// {"order": N, "coeffs": ["a/b", ...]}
nlohmann::json to_json(const CycElem& a);
CycElem cyc_from_json(const nlohmann::json& j);

// "(a0 + a1*z + ...)/d" with z = exp(2 pi i/N); the order is not printed.
std::string to_string(const CycElem& a);

}  // namespace qinv
