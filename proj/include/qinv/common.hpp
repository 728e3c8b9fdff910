#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qinv {

// Thrown when an operation's precondition does not hold (bad parameters,
// hypotheses of a congruence theorem not met, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Operands of a binary ring operation live in different cyclotomic orders.
class OrderMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Element has no inverse in the field of fractions (it is zero).
class NotInvertible : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A denominator is divisible by the prime: the congruence cannot be tested.
class NotTestableModP : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An internal consistency assertion failed. Indicates a convention or
// implementation bug, never bad user input.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Which implementation of a data-parallel kernel to run. The serial
// versions are the reference; parallel ones must produce identical results.
enum class Exec { serial, parallel };

namespace detail {

inline std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    return a / std::gcd(a, b) * b;
}

// Distinct prime factors in increasing order.
std::vector<std::int64_t> prime_factors(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

bool is_prime(std::int64_t n);

std::vector<std::int64_t> divisors(std::int64_t n);

// Base^exp mod m for small moduli (m < 2^31).
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);

// Inverse of a mod m; requires gcd(a, m) == 1.
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

}  // namespace detail

// Number of OpenMP threads used by parallel kernels (1 without OpenMP).
int max_threads();
void set_num_threads(int n);

}  // namespace qinv
