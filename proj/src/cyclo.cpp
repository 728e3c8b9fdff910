#include "qinv/cyclo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "qinv/kernels.hpp"

namespace qinv {

using detail::floor_mod;

// ---------------------------------------------------------------------------
// Cyclotomic polynomials

namespace {

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
    __int128 v = static_cast<__int128>(acc) + static_cast<__int128>(a) * b;
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("cyclotomic_poly: coefficient overflow");
    return static_cast<std::int64_t>(v);
}

std::vector<std::int64_t> mul_int_poly(const std::vector<std::int64_t>& a,
                                       const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = checked_mul_add(out[i + j], a[i], b[j]);
    }
    return out;
}

}  // namespace

IntPolynomial cyclotomic_poly(std::int64_t n) {
    if (n < 1) throw PreconditionError("cyclotomic_poly: order must be positive");

    static std::mutex mu;
    static std::map<std::int64_t, IntPolynomial> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }

    IntPolynomial result;
    if (n == 1) {
        result.coeffs = {-1, 1};
    } else {
        std::vector<std::int64_t> divisor_product{1};
        for (auto d : detail::divisors(n)) {
            if (d == n) continue;
            divisor_product = mul_int_poly(divisor_product, cyclotomic_poly(d).coeffs);
        }
        // x^n - 1 divided by a monic polynomial.
        std::vector<std::int64_t> rem(n + 1, 0);
        rem[0] = -1;
        rem[n] = 1;
        const auto dd = static_cast<std::int64_t>(divisor_product.size()) - 1;
        std::vector<std::int64_t> quot(n - dd + 1, 0);
        for (std::int64_t i = n; i >= dd; --i) {
            const std::int64_t c = rem[i];
            if (c == 0) continue;
            quot[i - dd] = c;
            for (std::int64_t j = 0; j <= dd; ++j)
                rem[i - dd + j] = checked_mul_add(rem[i - dd + j], -c, divisor_product[j]);
        }
        for (std::int64_t i = 0; i < dd; ++i)
            if (rem[i] != 0) throw ConsistencyError("cyclotomic_poly: inexact division");
        result.coeffs = std::move(quot);
    }

    std::lock_guard lock(mu);
    cache.emplace(n, result);
    return result;
}

const CycloRing& CycloRing::get(std::int64_t order) {
    if (order < 1) throw PreconditionError("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<std::int64_t, std::unique_ptr<CycloRing>> rings;
    {
        std::lock_guard lock(mu);
        if (auto it = rings.find(order); it != rings.end()) return *it->second;
    }
    auto ring = std::make_unique<CycloRing>();
    ring->order = order;
    const auto phi_poly = cyclotomic_poly(order);
    ring->phi = phi_poly.degree();
    for (std::int64_t j = 0; j < ring->phi; ++j)
        if (phi_poly.coeffs[j] != 0) ring->low_terms.emplace_back(j, phi_poly.coeffs[j]);

    std::lock_guard lock(mu);
    auto [it, inserted] = rings.emplace(order, std::move(ring));
    return *it->second;
}

void CycloRing::reduce(std::vector<mpz_class>& poly) const {
    const auto n = static_cast<std::int64_t>(poly.size());
    for (std::int64_t i = n - 1; i >= phi; --i) {
        if (sgn(poly[i]) == 0) continue;
        const std::int64_t base = i - phi;
        for (const auto& [j, v] : low_terms) {
            // x^phi = -sum(low_terms)
            if (v > 0)
                mpz_submul_ui(poly[base + j].get_mpz_t(), poly[i].get_mpz_t(), static_cast<unsigned long>(v));
            else
                mpz_addmul_ui(poly[base + j].get_mpz_t(), poly[i].get_mpz_t(), static_cast<unsigned long>(-v));
        }
        poly[i] = 0;
    }
    poly.resize(phi);
}

// ---------------------------------------------------------------------------
// CycElem

CycElem::CycElem() : CycElem(&CycloRing::get(1), {mpz_class(0)}, 1) {}

CycElem::CycElem(const CycloRing* ring, std::vector<mpz_class> num, mpz_class den)
    : ring_(ring), num_(std::move(num)), den_(std::move(den)) {
    if (static_cast<std::int64_t>(num_.size()) != ring_->phi) ring_->reduce(num_);
    num_.resize(ring_->phi);
    normalize();
}

void CycElem::normalize() {
    if (sgn(den_) == 0) throw std::domain_error("CycElem: zero denominator");
    if (sgn(den_) < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    if (den_ == 1) return;
    mpz_class g = den_;
    bool all_zero = true;
    for (const auto& c : num_) {
        if (sgn(c) == 0) continue;
        all_zero = false;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
    }
    if (all_zero) {
        den_ = 1;
        return;
    }
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

CycElem CycElem::zero(std::int64_t order) {
    const auto& r = CycloRing::get(order);
    return CycElem(&r, std::vector<mpz_class>(r.phi), 1);
}

CycElem CycElem::one(std::int64_t order) { return from_integer(order, 1); }

CycElem CycElem::from_integer(std::int64_t order, const mpz_class& v) {
    const auto& r = CycloRing::get(order);
    std::vector<mpz_class> num(r.phi);
    num[0] = v;
    return CycElem(&r, std::move(num), 1);
}

CycElem CycElem::from_rational(std::int64_t order, const mpq_class& v) {
    const auto& r = CycloRing::get(order);
    std::vector<mpz_class> num(r.phi);
    num[0] = v.get_num();
    return CycElem(&r, std::move(num), v.get_den());
}

CycElem CycElem::from_coeffs(std::int64_t order, const std::vector<mpq_class>& coeffs) {
    mpz_class den = 1;
    for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> num(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    return from_numerators(order, std::move(num), den);
}

CycElem CycElem::from_numerators(std::int64_t order, std::vector<mpz_class> nums, mpz_class den) {
    const auto& r = CycloRing::get(order);
    if (static_cast<std::int64_t>(nums.size()) < r.phi) nums.resize(r.phi);
    r.reduce(nums);
    return CycElem(&r, std::move(nums), std::move(den));
}

CycElem CycElem::from_monomials(std::int64_t order,
                                const std::vector<std::pair<std::int64_t, std::int64_t>>& terms) {
    std::vector<std::int64_t> hist(order, 0);
    for (const auto& [e, c] : terms) hist[floor_mod(e, order)] += c;
    std::vector<mpz_class> nums(order);
    for (std::int64_t i = 0; i < order; ++i)
        if (hist[i] != 0) nums[i] = static_cast<long>(hist[i]);
    return from_numerators(order, std::move(nums), 1);
}

mpq_class CycElem::coeff(std::int64_t j) const {
    mpq_class q(num_.at(j), den_);
    q.canonicalize();
    return q;
}

std::vector<mpq_class> CycElem::coeffs() const {
    std::vector<mpq_class> out;
    out.reserve(num_.size());
    for (std::int64_t j = 0; j < dim(); ++j) out.push_back(coeff(j));
    return out;
}

bool CycElem::is_zero() const {
    return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

bool CycElem::is_one() const {
    if (den_ != 1 || num_[0] != 1) return false;
    return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

std::optional<mpq_class> CycElem::as_rational() const {
    if (!std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return sgn(c) == 0; }))
        return std::nullopt;
    return coeff(0);
}

std::size_t CycElem::nonzero_terms() const {
    return static_cast<std::size_t>(
        std::count_if(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) != 0; }));
}

CycElem CycElem::operator-() const {
    CycElem r = *this;
    for (auto& c : r.num_) c = -c;
    return r;
}

namespace {

std::pair<CycElem, CycElem> common_order(const CycElem& a, const CycElem& b) {
    const auto n = detail::lcm64(a.order(), b.order());
    return {lift(a, n), lift(b, n)};
}

}  // namespace

CycElem& CycElem::operator+=(const CycElem& o) {
    if (order() != o.order()) {
        auto [x, y] = common_order(*this, o);
        return *this = x + y;
    }
    if (den_ == o.den_) {
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
    } else {
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
        const mpz_class fa = l / den_, fb = l / o.den_;
        for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * fa + o.num_[i] * fb;
        den_ = l;
    }
    normalize();
    return *this;
}

CycElem& CycElem::operator-=(const CycElem& o) { return *this += -o; }

CycElem CycElem::multiply_same_order(const CycElem& a, const CycElem& b) {
    // Put the sparser operand on the outside of the convolution.
    const bool swap = a.nonzero_terms() > b.nonzero_terms();
    const auto& x = swap ? b : a;
    const auto& y = swap ? a : b;
    auto prod = kernels::convolve(x.num_, y.num_);
    a.ring_->reduce(prod);
    return CycElem(a.ring_, std::move(prod), a.den_ * b.den_);
}

CycElem operator*(const CycElem& a, const CycElem& b) {
    if (a.order() != b.order()) {
        auto [x, y] = common_order(a, b);
        return CycElem::multiply_same_order(x, y);
    }
    return CycElem::multiply_same_order(a, b);
}

CycElem& CycElem::operator*=(const CycElem& o) { return *this = *this * o; }

CycElem& CycElem::operator*=(const mpq_class& s) {
    for (auto& c : num_) c *= s.get_num();
    den_ *= s.get_den();
    normalize();
    return *this;
}

bool operator==(const CycElem& a, const CycElem& b) {
    if (a.order() != b.order()) {
        auto [x, y] = common_order(a, b);
        return x == y;
    }
    return a.den_ == b.den_ && a.num_ == b.num_;
}

CycElem lift(const CycElem& a, std::int64_t order) {
    if (order == a.order()) return a;
    if (order % a.order() != 0)
        throw OrderMismatch("lift: target order " + std::to_string(order) + " is not a multiple of " +
                            std::to_string(a.order()));
    const std::int64_t step = order / a.order();
    std::vector<mpz_class> nums((a.dim() - 1) * step + 1);
    for (std::int64_t j = 0; j < a.dim(); ++j) nums[j * step] = a.num_[j];
    return CycElem::from_numerators(order, std::move(nums), a.den_);
}

CycElem arith(const CycElem& a, const CycElem& b, ArithOp op) {
    if (a.order() != b.order())
        throw OrderMismatch("arith: orders " + std::to_string(a.order()) + " and " +
                            std::to_string(b.order()) + " differ; lift first");
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
    }
    throw std::invalid_argument("arith: unknown op");
}

CycElem power(const CycElem& a, std::int64_t e) {
    if (e < 0) return power(inverse(a), -e);
    CycElem result = CycElem::one(a.order());
    CycElem base = a;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

// ---------------------------------------------------------------------------
// Inversion over Q[x]

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Returns (quotient, remainder) of a / b; b nonzero and trimmed.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {QPoly{}, a};
    QPoly q(a.size() - b.size() + 1);
    const mpq_class lead = b.back();
    for (std::size_t i = a.size(); i-- >= b.size();) {
        if (sgn(a[i]) == 0) continue;
        const mpq_class c = a[i] / lead;
        const std::size_t shift = i - (b.size() - 1);
        q[shift] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    }
    trim(a);
    return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    trim(out);
    return out;
}

}  // namespace

CycElem inverse(const CycElem& a) {
    if (a.is_zero()) throw NotInvertible("inverse: element is zero");
    const auto phi = cyclotomic_poly(a.order());
    QPoly r0(phi.coeffs.begin(), phi.coeffs.end());
    QPoly r1(a.numerators().begin(), a.numerators().end());
    trim(r1);
    QPoly s0{}, s1{mpq_class(1)};
    while (!r1.empty()) {
        auto [q, rem] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        QPoly s2 = sub(s0, mul(q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw NotInvertible("inverse: element shares a factor with the cyclotomic polynomial");
    const mpq_class scale = mpq_class(a.denominator()) / r0[0];
    for (auto& c : s0) c *= scale;
    return CycElem::from_coeffs(a.order(), s0);
}

// ---------------------------------------------------------------------------
// Galois action, roots, square roots

CycElem galois(const CycElem& a, std::int64_t k) {
    const auto n = a.order();
    if (std::gcd(floor_mod(k, n), n) != 1)
        throw PreconditionError("galois: exponent " + std::to_string(k) + " not coprime to order " +
                                std::to_string(n));
    const std::int64_t kk = floor_mod(k, n);
    std::vector<mpz_class> nums(n);
    for (std::int64_t j = 0; j < a.dim(); ++j) nums[(j * kk) % n] += a.num_[j];
    return CycElem::from_numerators(n, std::move(nums), a.den_);
}

CycElem conjugate(const CycElem& a) { return galois(a, -1); }

CycElem make_root(std::int64_t n, std::int64_t a, std::int64_t k) {
    if (a < 1 || n % a != 0)
        throw PreconditionError("make_root: root order " + std::to_string(a) + " does not divide " +
                                std::to_string(n));
    return CycElem::from_monomials(n, {{floor_mod(k, a) * (n / a), 1}});
}

CycElem sqrt_int(std::int64_t d, std::int64_t n) {
    if (d < 1) throw PreconditionError("sqrt_int: d must be positive");
    // d = s^2 * core with core squarefree; sqrt(d) lies in Q(xi_n) iff the
    // conductor of Q(sqrt(core)) divides n.
    std::int64_t s = 1, core = 1, rest = d;
    for (auto p : detail::prime_factors(d)) {
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (int i = 0; i < e / 2; ++i) s *= p;
        if (e % 2) core *= p;
    }
    const std::int64_t conductor = core % 4 == 1 ? core : 4 * core;
    if (n % conductor != 0)
        throw PreconditionError("sqrt_int: sqrt(" + std::to_string(d) + ") does not lie in Z[xi_" +
                                std::to_string(n) + "]");

    static std::mutex mu;
    static std::map<std::pair<std::int64_t, std::int64_t>, CycElem> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({d, n}); it != cache.end()) return it->second;
    }

    std::int64_t odd = core % 2 == 0 ? core / 2 : core;
    CycElem result = CycElem::from_integer(n, s);
    if (core % 2 == 0) result *= make_root(n, 8, 1) + make_root(n, 8, -1);
    if (odd > 1) {
        // Quadratic Gauss sum: sqrt(odd) for odd = 1 mod 4, i*sqrt(odd) otherwise.
        std::vector<std::pair<std::int64_t, std::int64_t>> terms;
        for (std::int64_t k = 0; k < odd; ++k) terms.emplace_back((k * k % odd) * (n / odd), 1);
        CycElem gauss = CycElem::from_monomials(n, terms);
        if (odd % 4 == 3) gauss *= make_root(n, 4, -1);
        result *= gauss;
    }

    if (result * result != CycElem::from_integer(n, d))
        throw ConsistencyError("sqrt_int: square check failed");
    const auto z = embed_complex(result);
    if (!(z.real() > 0) || std::abs(z.imag()) > 1e-9 || std::abs(z.real() - std::sqrt(double(d))) > 1e-9)
        throw ConsistencyError("sqrt_int: not the positive real branch");

    std::lock_guard lock(mu);
    cache.emplace(std::pair{d, n}, result);
    return result;
}

std::vector<std::int64_t> denominator_primes(const CycElem& a) {
    std::vector<std::int64_t> out;
    mpz_class d = a.denominator();
    for (unsigned long p = 2; d > 1; ++p) {
        if (mpz_divisible_ui_p(d.get_mpz_t(), p)) {
            out.push_back(static_cast<std::int64_t>(p));
            while (mpz_divisible_ui_p(d.get_mpz_t(), p)) mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p);
        }
        if (p > 1000000) {
            // Large cofactor: report it whole.
            out.push_back(-1);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reduction mod p

namespace {

void reduce_mod_phi(std::vector<std::int64_t>& poly, const CycloRing& ring, std::int64_t p) {
    const auto n = static_cast<std::int64_t>(poly.size());
    for (std::int64_t i = n - 1; i >= ring.phi; --i) {
        const std::int64_t c = poly[i];
        if (c == 0) continue;
        const std::int64_t base = i - ring.phi;
        for (const auto& [j, v] : ring.low_terms)
            poly[base + j] = floor_mod(poly[base + j] - c * floor_mod(v, p), p);
        poly[i] = 0;
    }
    poly.resize(ring.phi);
}

void check_prime(std::int64_t p) {
    if (!detail::is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
    if (p > (std::int64_t{1} << 31)) throw PreconditionError("modulus too large");
}

}  // namespace

ModPElem::ModPElem(std::int64_t order, std::int64_t p, std::vector<std::int64_t> residues)
    : order_(order), p_(p), res_(std::move(residues)) {
    const auto& ring = CycloRing::get(order);
    for (auto& r : res_) r = floor_mod(r, p);
    if (static_cast<std::int64_t>(res_.size()) != ring.phi) {
        res_.resize(std::max<std::int64_t>(ring.phi, static_cast<std::int64_t>(res_.size())), 0);
        reduce_mod_phi(res_, ring, p);
    }
}

ModPElem ModPElem::one(std::int64_t order, std::int64_t p) {
    std::vector<std::int64_t> r(CycloRing::get(order).phi, 0);
    r[0] = 1;
    return ModPElem(order, p, std::move(r));
}

bool ModPElem::is_zero() const {
    return std::all_of(res_.begin(), res_.end(), [](std::int64_t c) { return c == 0; });
}

void ModPElem::check_compatible(const ModPElem& o) const {
    if (order_ != o.order_) throw OrderMismatch("ModPElem: order mismatch");
    if (p_ != o.p_) throw PreconditionError("ModPElem: prime mismatch");
}

ModPElem ModPElem::operator+(const ModPElem& o) const {
    check_compatible(o);
    auto r = res_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = (r[i] + o.res_[i]) % p_;
    return ModPElem(order_, p_, std::move(r));
}

ModPElem ModPElem::operator-(const ModPElem& o) const {
    check_compatible(o);
    auto r = res_;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = floor_mod(r[i] - o.res_[i], p_);
    return ModPElem(order_, p_, std::move(r));
}

ModPElem ModPElem::operator*(const ModPElem& o) const {
    check_compatible(o);
    auto prod = res_.size() > 128 && max_threads() > 1 ? kernels::convolve_mod_parallel(res_, o.res_, p_)
                                                        : kernels::convolve_mod_serial(res_, o.res_, p_);
    reduce_mod_phi(prod, CycloRing::get(order_), p_);
    return ModPElem(order_, p_, std::move(prod));
}

ModPElem ModPElem::pow(std::int64_t e) const {
    if (e < 0) throw PreconditionError("ModPElem::pow: negative exponent");
    ModPElem result = one(order_, p_);
    ModPElem base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

ModPElem ModPElem::galois(std::int64_t k) const {
    if (std::gcd(floor_mod(k, order_), order_) != 1) throw PreconditionError("ModPElem::galois: k not a unit");
    const std::int64_t kk = floor_mod(k, order_);
    std::vector<std::int64_t> buf(order_, 0);
    for (std::size_t j = 0; j < res_.size(); ++j) {
        auto& slot = buf[(static_cast<std::int64_t>(j) * kk) % order_];
        slot = (slot + res_[j]) % p_;
    }
    reduce_mod_phi(buf, CycloRing::get(order_), p_);
    return ModPElem(order_, p_, std::move(buf));
}

ModPElem reduce_mod_p(const CycElem& a, std::int64_t p) {
    check_prime(p);
    const auto up = static_cast<unsigned long>(p);
    const auto den_mod = static_cast<std::int64_t>(mpz_fdiv_ui(a.denominator().get_mpz_t(), up));
    if (den_mod == 0)
        throw NotTestableModP("denominator " + a.denominator().get_str() + " is divisible by " + std::to_string(p));
    const std::int64_t inv = detail::inv_mod(den_mod, p);
    std::vector<std::int64_t> res(a.dim());
    for (std::int64_t j = 0; j < a.dim(); ++j) {
        const auto c = static_cast<std::int64_t>(mpz_fdiv_ui(a.numerators()[j].get_mpz_t(), up));
        res[j] = c * inv % p;
    }
    return ModPElem(a.order(), p, std::move(res));
}

bool eq_mod_p(const CycElem& a, const CycElem& b, std::int64_t p) { return reduce_mod_p(a - b, p).is_zero(); }

bool frobenius_check(const CycElem& a, std::int64_t p) {
    check_prime(p);
    if (p == 2) throw PreconditionError("frobenius_check: p must be odd");
    if (a.order() % p == 0) throw PreconditionError("frobenius_check: p divides the order");
    return eq_mod_p(power(a, p), galois(a, p), p);
}

// ---------------------------------------------------------------------------
// Descent to a subring

namespace {

struct DescentSolver {
    std::int64_t order = 0, sub = 0;
    std::vector<std::int64_t> pivots;
    std::vector<std::vector<mpq_class>> inv;  // sub_phi x sub_phi
};

constexpr std::uint64_t kPivotPrime = 2305843009213693951ULL;  // 2^61 - 1

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPivotPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t to_field(const mpz_class& v) {
    if (v.fits_slong_p()) {
        const long x = v.get_si();
        return x >= 0 ? static_cast<std::uint64_t>(x) % kPivotPrime
                      : (kPivotPrime - static_cast<std::uint64_t>(-x) % kPivotPrime) % kPivotPrime;
    }
    static const mpz_class modulus(std::to_string(kPivotPrime));
    mpz_class m;
    mpz_fdiv_r(m.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
    return static_cast<std::uint64_t>(m.get_ui());
}

DescentSolver build_solver(std::int64_t order, std::int64_t sub) {
    DescentSolver s;
    s.order = order;
    s.sub = sub;
    const auto sub_phi = CycloRing::get(sub).phi;
    const auto phi = CycloRing::get(order).phi;

    std::vector<std::vector<mpz_class>> basis;
    for (std::int64_t j = 0; j < sub_phi; ++j) basis.push_back(make_root(order, sub, j).numerators());

    // Pick coordinates on which the basis is independent, working mod a
    // large prime; the exact inverse below certifies the choice.
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::int64_t j = 0; j < sub_phi; ++j) {
        std::vector<std::uint64_t> v(phi);
        for (std::int64_t i = 0; i < phi; ++i) v[i] = to_field(basis[j][i]);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::uint64_t f = v[s.pivots[k]];
            if (f == 0) continue;
            for (std::int64_t i = 0; i < phi; ++i)
                v[i] = (v[i] + kPivotPrime - mulmod(f, rows[k][i])) % kPivotPrime;
        }
        std::int64_t piv = -1;
        for (std::int64_t i = 0; i < phi; ++i)
            if (v[i] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw ConsistencyError("descend: basis rank deficient mod pivot prime");
        const std::uint64_t inv = powmod(v[piv], kPivotPrime - 2);
        for (auto& x : v) x = mulmod(x, inv);
        s.pivots.push_back(piv);
        rows.push_back(std::move(v));
    }

    // Exact Gauss-Jordan inverse of the square system S[k][j] = basis_j[pivot_k].
    const auto n = static_cast<std::size_t>(sub_phi);
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(2 * n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) m[k][j] = basis[j][s.pivots[k]];
        m[k][n + k] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        while (pr < n && sgn(m[pr][col]) == 0) ++pr;
        if (pr == n) throw ConsistencyError("descend: singular pivot system");
        std::swap(m[pr], m[col]);
        const mpq_class lead = m[col][col];
        for (auto& x : m[col]) x /= lead;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(m[r][col]) == 0) continue;
            const mpq_class f = m[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    s.inv.assign(n, std::vector<mpq_class>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) s.inv[r][c] = m[r][n + c];
    return s;
}

const DescentSolver& solver_for(std::int64_t order, std::int64_t sub) {
    static std::mutex mu;
    static std::map<std::pair<std::int64_t, std::int64_t>, std::unique_ptr<DescentSolver>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find({order, sub}); it != cache.end()) return *it->second;
    }
    auto solver = std::make_unique<DescentSolver>(build_solver(order, sub));
    std::lock_guard lock(mu);
    auto [it, inserted] = cache.emplace(std::pair{order, sub}, std::move(solver));
    return *it->second;
}

}  // namespace

std::optional<CycElem> descend(const CycElem& a, std::int64_t t) {
    if (t < 1 || a.order() % t != 0)
        throw PreconditionError("descend: " + std::to_string(t) + " does not divide " + std::to_string(a.order()));
    if (t == a.order()) return a;
    const auto& s = solver_for(a.order(), t);
    const auto n = s.pivots.size();
    std::vector<mpq_class> rhs(n);
    for (std::size_t k = 0; k < n; ++k) rhs[k] = a.coeff(s.pivots[k]);
    std::vector<mpq_class> x(n);
    for (std::size_t r = 0; r < n; ++r) {
        mpq_class acc = 0;
        for (std::size_t c = 0; c < n; ++c)
            if (sgn(rhs[c]) != 0) acc += s.inv[r][c] * rhs[c];
        x[r] = acc;
    }
    CycElem candidate = CycElem::from_coeffs(t, x);
    if (lift(candidate, a.order()) != a) return std::nullopt;
    return candidate;
}

// ---------------------------------------------------------------------------
// Numeric embedding, serialization

std::complex<double> embed_complex(const CycElem& a) {
    const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    long double re = 0, im = 0;
    for (std::int64_t j = 0; j < a.dim(); ++j) {
        const auto& c = a.numerators()[j];
        if (sgn(c) == 0) continue;
        const long double v = c.get_d();
        const long double ang = two_pi * static_cast<long double>(j) / static_cast<long double>(a.order());
        re += v * std::cos(ang);
        im += v * std::sin(ang);
    }
    const long double d = a.denominator().get_d();
    return {static_cast<double>(re / d), static_cast<double>(im / d)};
}

nlohmann::json to_json(const CycElem& a) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (std::int64_t j = 0; j < a.dim(); ++j) coeffs.push_back(a.coeff(j).get_str());
    return {{"order", a.order()}, {"coeffs", coeffs}};
}

CycElem cyc_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
        throw std::invalid_argument("CycElem JSON: expected {\"order\", \"coeffs\"}");
    const auto order = j.at("order").get<std::int64_t>();
    if (order < 1) throw std::invalid_argument("CycElem JSON: order must be positive");
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || static_cast<std::int64_t>(arr.size()) != CycloRing::get(order).phi)
        throw std::invalid_argument("CycElem JSON: coeffs must have phi(order) entries");
    std::vector<mpq_class> coeffs;
    for (const auto& c : arr) {
        const auto s = c.get<std::string>();
        if (s.find_first_of(".eE") != std::string::npos)
            throw std::invalid_argument("CycElem JSON: coefficient '" + s + "' is not a fraction");
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("CycElem JSON: bad coefficient '" + s + "'");
        if (sgn(q.get_den()) == 0) throw std::invalid_argument("CycElem JSON: zero denominator");
        q.canonicalize();
        coeffs.push_back(q);
    }
    return CycElem::from_coeffs(order, coeffs);
}

std::string to_string(const CycElem& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::int64_t j = 0; j < a.dim(); ++j) {
        mpz_class c = a.numerators()[j];
        if (sgn(c) == 0) continue;
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        c = abs(c);
        if (j == 0) {
            os << c;
        } else {
            if (c != 1) os << c << "*";
            os << "z";
            if (j > 1) os << "^" << j;
        }
        first = false;
    }
    if (a.denominator() == 1) return os.str();
    if (a.nonzero_terms() == 1 && sgn(a.numerators()[0]) != 0) return os.str() + "/" + a.denominator().get_str();
    return "(" + os.str() + ")/" + a.denominator().get_str();
}

}  // namespace qinv
