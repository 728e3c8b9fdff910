#pragma once

// Integer Laurent polynomials in one variable.

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

#include "json.hpp"
#include "qinv/cyclo.hpp"

namespace qinv {

class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(std::int64_t c) { add_term(0, c); }  // NOLINT(implicit)
    static LaurentPoly monomial(std::int64_t exp, const mpz_class& c = 1);

    bool is_zero() const { return terms_.empty(); }
    const std::map<std::int64_t, mpz_class>& terms() const { return terms_; }
    mpz_class coeff(std::int64_t exp) const;
    std::int64_t min_exp() const;  // requires nonzero
    std::int64_t max_exp() const;

    void add_term(std::int64_t exp, const mpz_class& c);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

    LaurentPoly pow(int n) const;
    // x -> x^k (k may be negative).
    LaurentPoly substitute_power(std::int64_t k) const;
    // Exponents divided by k; throws PreconditionError if some is not a multiple.
    LaurentPoly divide_exponents(std::int64_t k) const;
    // Exact quotient; throws PreconditionError if the division leaves a remainder.
    LaurentPoly divide_exact(const LaurentPoly& d) const;
    // Value at x = 1.
    mpz_class at_one() const;

    std::string to_string(const std::string& var) const;

private:
    std::map<std::int64_t, mpz_class> terms_;
};

// f(sign * xi_order^k), in order `order` (order 2*order when sign = -1 and
// order is odd).
CycElem evaluate(const LaurentPoly& f, std::int64_t order, std::int64_t k, int sign = 1);

// {"var": v, "terms": [[exp, "coeff"], ...]} in increasing exponent.
nlohmann::json to_json(const LaurentPoly& f, const std::string& var);
LaurentPoly laurent_from_json(const nlohmann::json& j);

}  // namespace qinv
