#include "qinv/skein.hpp"

#include <algorithm>
#include <memory>

#include "qinv/numth.hpp"

namespace qinv {

namespace {

bool primes_within(const CycElem& x, std::int64_t n) {
    const auto allowed = detail::prime_factors(n);
    for (auto p : denominator_primes(x))
        if (std::find(allowed.begin(), allowed.end(), p) == allowed.end()) return false;
    return true;
}

}  // namespace

SkeinParams::SkeinParams(int r) : r_(r) {
    if (r < 3) throw PreconditionError("level r must be at least 3");
    t_ = r % 2 == 0 ? 4 * r : 8 * r;
    const std::int64_t n2 = 2 * r;

    lambda_ = make_root(n2, n2, 1);
    a_ = -make_root(t_, 4 * r, 1);
    kappa_ = make_root(t_, 8, 1) * make_root(t_, 4 * r, -1);
    // eta = (lambda - lambda^-1) / (i sqrt(2r)) = -i (lambda - lambda^-1) sqrt(2r) / (2r)
    const CycElem diff = make_root(t_, n2, 1) - make_root(t_, n2, -1);
    eta_ = -make_root(t_, 4, 1) * diff * sqrt_int(n2, t_) * mpq_class(1, n2);

    qint_.reserve(2 * r + 1);
    for (int n = 0; n <= 2 * r; ++n) {
        std::vector<std::pair<std::int64_t, std::int64_t>> terms;
        for (int k = 0; k < n; ++k) terms.emplace_back(n - 1 - 2 * k, 1);
        qint_.push_back(CycElem::from_monomials(n2, terms));
    }
    qfact_.push_back(CycElem::one(n2));
    for (int n = 1; n <= 2 * r; ++n) qfact_.push_back(qfact_.back() * qint_[n]);
    for (int n = 0; n <= r - 1; ++n) inv_qfact_.push_back(inverse(qfact_[n]));

    const CycElem d1 = -(lambda_ + make_root(n2, n2, -1));
    delta_.push_back(CycElem::one(n2));
    if (r - 2 >= 1) delta_.push_back(d1);
    for (int i = 2; i <= r - 2; ++i) delta_.push_back(d1 * delta_[i - 1] - delta_[i - 2]);

    for (int a = 0; a <= r - 2; ++a)
        for (int b = 0; b <= r - 2; ++b)
            for (int c = 0; c <= r - 2; ++c) {
                if (!admissible(a, b, c)) continue;
                const int i = (b + c - a) / 2, j = (a + c - b) / 2, k = (a + b - c) / 2;
                CycElem th = qfact_[i + j + k + 1] * qfact_[i] * qfact_[j] * qfact_[k] * inv_qfact_[a] *
                             inv_qfact_[b] * inv_qfact_[c];
                if ((i + j + k) % 2) th = -th;
                if (th.is_zero()) throw ConsistencyError("theta vanishes on an admissible triple");
                CycElem inv = inverse(th);
                theta_.emplace(std::array{a, b, c}, std::pair{std::move(th), std::move(inv)});
            }
}

const SkeinParams& SkeinParams::get(int r) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<SkeinParams>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(r); it != cache.end()) return *it->second;
    }
    auto sp = std::make_unique<SkeinParams>(r);
    std::lock_guard lock(mu);
    auto [it, inserted] = cache.emplace(r, std::move(sp));
    return *it->second;
}

const CycElem& SkeinParams::qint(int n) const {
    if (n < 0 || n > 2 * r_) throw PreconditionError("quantum integer index out of range");
    return qint_[n];
}

const CycElem& SkeinParams::qfact(int n) const {
    if (n < 0 || n > 2 * r_) throw PreconditionError("quantum factorial index out of range");
    return qfact_[n];
}

const CycElem& SkeinParams::inv_qfact(int n) const {
    if (n < 0 || n > r_ - 1)
        throw ConsistencyError("division by [" + std::to_string(n) + "]!, which is not a unit");
    return inv_qfact_[n];
}

const CycElem& SkeinParams::delta(int i) const {
    check_color(i);
    return delta_[i];
}

void SkeinParams::check_color(int c) const {
    if (c < 0 || c > r_ - 2)
        throw PreconditionError("color " + std::to_string(c) + " outside [0, " + std::to_string(r_ - 2) + "]");
}

bool SkeinParams::admissible(int a, int b, int c) const {
    check_color(a);
    check_color(b);
    check_color(c);
    return (a + b + c) % 2 == 0 && a + b + c <= 2 * r_ - 4 && std::abs(a - b) <= c && c <= a + b;
}

CycElem SkeinParams::theta(int a, int b, int c) const {
    auto it = theta_.find({a, b, c});
    if (it == theta_.end()) {
        admissible(a, b, c);  // range errors first
        throw PreconditionError("theta: inadmissible triple");
    }
    return it->second.first;
}

const CycElem& SkeinParams::theta_inverse(int a, int b, int c) const {
    auto it = theta_.find({a, b, c});
    if (it == theta_.end()) throw PreconditionError("theta: inadmissible triple");
    return it->second.second;
}

const CycElem& SkeinParams::tet(int a, int b, int c, int d, int e, int f) const {
    const std::array key{a, b, c, d, e, f};
    {
        std::lock_guard lock(tet_mu_);
        if (auto it = tet_.find(key); it != tet_.end()) return it->second;
    }
    CycElem v = tet_uncached(a, b, c, d, e, f);
    std::lock_guard lock(tet_mu_);
    return tet_.emplace(key, std::move(v)).first->second;
}

CycElem SkeinParams::tet_uncached(int A, int B, int C, int D, int E, int F) const {
    if (!admissible(A, D, E) || !admissible(B, C, E) || !admissible(A, B, F) || !admissible(C, D, F))
        throw PreconditionError("tet: inadmissible face");
    const std::array<int, 4> a{(A + D + E) / 2, (B + C + E) / 2, (A + B + F) / 2, (C + D + F) / 2};
    const std::array<int, 3> b{(B + D + E + F) / 2, (A + C + E + F) / 2, (A + B + C + D) / 2};

    CycElem prefactor = CycElem::one(2 * r_);
    for (int ai : a)
        for (int bj : b) prefactor *= qfact_[bj - ai];
    for (int col : {A, B, C, D, E, F}) prefactor *= inv_qfact(col);

    CycElem sum = CycElem::zero(2 * r_);
    const int lo = *std::max_element(a.begin(), a.end());
    const int hi = *std::min_element(b.begin(), b.end());
    for (int s = lo; s <= hi; ++s) {
        CycElem term = qfact_[s + 1];
        if (term.is_zero()) continue;
        for (int ai : a) term *= inv_qfact(s - ai);
        for (int bj : b) term *= inv_qfact(bj - s);
        if (s % 2) term = -term;
        sum += term;
    }
    return prefactor * sum;
}

CycElem quantum_int(const SkeinParams& sp, int n) {
    if (n < 0) throw PreconditionError("quantum_int: n must be nonnegative");
    if (n <= 2 * sp.r()) return sp.qint(n);
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (int k = 0; k < n; ++k) terms.emplace_back(n - 1 - 2 * k, 1);
    return CycElem::from_monomials(sp.lambda_order(), terms);
}

CycElem delta(const SkeinParams& sp, int i) { return sp.delta(i); }
bool admissible(const SkeinParams& sp, int a, int b, int c) { return sp.admissible(a, b, c); }
CycElem theta(const SkeinParams& sp, int a, int b, int c) { return sp.theta(a, b, c); }
CycElem tet(const SkeinParams& sp, int a, int b, int c, int d, int e, int f) {
    return sp.tet(a, b, c, d, e, f);
}

std::optional<CycElem> quantum_int_unit_certificate(const SkeinParams& sp, int n) {
    const CycElem q = quantum_int(sp, n);
    if (q.is_zero()) return std::nullopt;
    CycElem inv = inverse(q);
    if (!(inv * q).is_one() || !primes_within(inv, 2 * sp.r())) return std::nullopt;
    return inv;
}

bool lemma1_check(const SkeinParams& sp) {
    const auto n2 = sp.lambda_order();
    for (std::int64_t j = 1; j < n2; ++j) {
        const CycElem x = CycElem::one(n2) - make_root(n2, n2, j);
        if (!primes_within(inverse(x), n2)) return false;
    }
    return true;
}

int branch_sign(int r, std::int64_t p, int s) {
    if (p < 3 || !detail::is_prime(p)) throw PreconditionError("p must be an odd prime");
    if (std::gcd<std::int64_t>(p, 2 * r) != 1) throw PreconditionError("p must be prime to 2r");
    if (s < 1) throw PreconditionError("s must be positive");
    std::int64_t ps = 1;
    for (int i = 0; i < s; ++i) ps *= p;
    if (((ps + 1) / 2) % r == 0) return 1;
    if (((ps - 1) / 2) % r == 0) return -1;
    throw PreconditionError("r = " + std::to_string(r) + " divides neither (p^s+1)/2 nor (p^s-1)/2");
}

namespace {

std::int64_t ipow(std::int64_t p, int s) {
    std::int64_t v = 1;
    for (int i = 0; i < s; ++i) v *= p;
    return v;
}

// -+ (-2r|p)^s, upper sign for the +1 branch.
int lemma7_constant(int r, std::int64_t p, int s) {
    const int sign = branch_sign(r, p, s);
    int j = 1;
    for (int i = 0; i < s; ++i) j *= jacobi(-2 * r, p);
    return -sign * j;
}

bool frobenius_power_fixes(const CycElem& x, std::int64_t p, int s) {
    const auto res = reduce_mod_p(x, p);
    return res.pow(ipow(p, s)) == res;
}

}  // namespace

bool lemma3_check(const SkeinParams& sp, std::int64_t p, int s) {
    branch_sign(sp.r(), p, s);
    for (int i = 0; i <= sp.r() - 2; ++i)
        if (!frobenius_power_fixes(sp.delta(i), p, s)) return false;
    return frobenius_power_fixes(sp.eta() * sp.eta(), p, s);
}

bool lemma7_check(const SkeinParams& sp, std::int64_t p, int s) {
    const int c = lemma7_constant(sp.r(), p, s);
    const auto e = reduce_mod_p(sp.eta(), p);
    return e.pow(ipow(p, s)) == reduce_mod_p(sp.eta() * mpq_class(c), p);
}

std::vector<CycElem> omega_coeffs(const SkeinParams& sp) {
    std::vector<CycElem> out;
    for (int i = 0; i <= sp.r() - 2; ++i) out.push_back(sp.eta() * sp.delta(i));
    return out;
}

bool prop3_check(const SkeinParams& sp, std::int64_t p, int s) {
    const int c = lemma7_constant(sp.r(), p, s);
    for (const auto& w : omega_coeffs(sp))
        if (reduce_mod_p(w, p).pow(ipow(p, s)) != reduce_mod_p(w * mpq_class(c), p)) return false;
    return true;
}

}  // namespace qinv
