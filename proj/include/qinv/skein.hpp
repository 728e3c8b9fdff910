#pragma once

// Level-r constants of Kauffman-Lins recoupling theory at A = -xi_{4r}.
//
// Quantities that are polynomials in lambda = A^2 = xi_{2r} (quantum
// integers, loop values, theta and tetrahedron evaluations) are stored in
// order 2r. eta, kappa and A itself live in order t (4r for r even, 8r for
// r odd), which contains xi_8, xi_{4r} and sqrt(2r).

#include <array>
#include <map>
#include <mutex>
#include <vector>

#include "qinv/cyclo.hpp"

namespace qinv {

class SkeinParams {
public:
    explicit SkeinParams(int r);

    // Shared instance per level.
    static const SkeinParams& get(int r);

    int r() const { return r_; }
    std::int64_t t() const { return t_; }
    std::int64_t lambda_order() const { return 2 * r_; }

    const CycElem& lambda() const { return lambda_; }  // order 2r
    const CycElem& A() const { return a_; }            // order t
    const CycElem& eta() const { return eta_; }        // order t
    const CycElem& kappa() const { return kappa_; }    // order t

    // [n] for 0 <= n <= 2r and [n]! likewise.
    const CycElem& qint(int n) const;
    const CycElem& qfact(int n) const;
    // Delta_i for 0 <= i <= r-2, from the recursion.
    const CycElem& delta(int i) const;

    void check_color(int c) const;
    bool admissible(int a, int b, int c) const;
    CycElem theta(int a, int b, int c) const;
    const CycElem& theta_inverse(int a, int b, int c) const;
    // Tetrahedron with opposite edge pairs (a,c), (b,d), (e,f) and faces
    // (a,d,e), (b,c,e), (a,b,f), (c,d,f).
    const CycElem& tet(int a, int b, int c, int d, int e, int f) const;

private:
    CycElem tet_uncached(int a, int b, int c, int d, int e, int f) const;
    const CycElem& inv_qfact(int n) const;

    int r_;
    std::int64_t t_;
    CycElem lambda_, a_, eta_, kappa_;
    std::vector<CycElem> qint_, qfact_, inv_qfact_, delta_;
    std::map<std::array<int, 3>, std::pair<CycElem, CycElem>> theta_;
    mutable std::mutex tet_mu_;
    mutable std::map<std::array<int, 6>, CycElem> tet_;
};

CycElem quantum_int(const SkeinParams& sp, int n);
CycElem delta(const SkeinParams& sp, int i);
bool admissible(const SkeinParams& sp, int a, int b, int c);
CycElem theta(const SkeinParams& sp, int a, int b, int c);
CycElem tet(const SkeinParams& sp, int a, int b, int c, int d, int e, int f);

// Inverse of [n] when it is a unit of Z[1/2r, lambda], else nullopt.
std::optional<CycElem> quantum_int_unit_certificate(const SkeinParams& sp, int n);

// (1 - lambda^j)^{-1} has denominator supported on the primes of 2r for
// every j in 1..2r-1.
bool lemma1_check(const SkeinParams& sp);

// +1 when r | (p^s + 1)/2, -1 when r | (p^s - 1)/2; throws
// PreconditionError otherwise or when p is not an odd prime prime to 2r.
int branch_sign(int r, std::int64_t p, int s);

// Delta_i = Delta_i^{p^s} and eta^2 = (eta^2)^{p^s} mod p.
bool lemma3_check(const SkeinParams& sp, std::int64_t p, int s);
// eta^{p^s} = -+ (-2r|p)^s eta mod p, upper sign for r | (p^s+1)/2.
bool lemma7_check(const SkeinParams& sp, std::int64_t p, int s);

// (eta Delta_i) for i = 0..r-2, in order t.
std::vector<CycElem> omega_coeffs(const SkeinParams& sp);
// (eta Delta_i)^{p^s} = -+ (-2r|p)^s eta Delta_i mod p for every i.
bool prop3_check(const SkeinParams& sp, std::int64_t p, int s);

}  // namespace qinv
