#pragma once

// Scenario runners for the congruence theorems on lens spaces and branched
// covers of the unknot, with deterministic JSON reports.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qinv/cyclo.hpp"

namespace qinv {

enum class Verdict { pass, fail, precondition_rejected };
std::string to_string(Verdict v);

struct ScenarioReport {
    std::string id;
    nlohmann::json inputs;
    std::optional<CycElem> lhs, rhs;
    std::int64_t modulus = 0;
    Verdict verdict = Verdict::fail;
    std::string detail;
    nlohmann::json extra = nlohmann::json::object();
    double seconds = 0;
};

// Timing is left out unless requested so that reports are byte-stable.
nlohmann::json to_json(const ScenarioReport& rep, bool timing = false);

// w(L(m,q), mu_c) = kappa^{3 def} w(L(m p^k, q), mu_c)^{p^k} mod p. k = 0 is
// the trivial action.
ScenarioReport theorem1_lens(int r, std::int64_t m, std::int64_t q, std::int64_t p, int c, int k = 1);

// xi_8^{3 - 3p + (12m s(q,m) - 12mp s(q,mp))/m} = (q|p). For even m the
// exponent is cross-checked against its reciprocity form mod 8.
ScenarioReport defect_sign_check(std::int64_t m, std::int64_t q, std::int64_t p);

// eta Delta_c = -+ (-2r|p)^s (eta Delta_c)^{p^s} mod p, upper sign when
// r | (p^s + 1)/2.
ScenarioReport theorem3_unknot(int r, std::int64_t p, int s, int c);

struct Theorem2Scenario {
    enum class Kind { lens, unknot } kind = Kind::lens;
    std::int64_t m = 1, q = 1;  // lens: cover L(m,q) of L(mp^k,q)
    int k = 1;                  // lens: p-power of the action
    int s = 1;                  // unknot: the action has order p^s
    int c = 0;
};

// Finds every delta in [0, 8r) with w(cover) = kappa^delta w(base)^{|G|} mod p
// and checks it against the explicit exponents of the lens and unknot cases.
ScenarioReport theorem2_consistency(int r, std::int64_t p, const Theorem2Scenario& sc);

// Solves x^p = kappa^{-3 def} w(L(m,q)) mod p through the inverse Frobenius
// and compares x with w(L(mp,q)) mod p.
ScenarioReport frobenius_solvability(int r, std::int64_t m, std::int64_t q, std::int64_t p, int c);

// tv(L(m,q)) = tv(L(mp,q))^p mod p on triangulated lens spaces, together
// with the Theorem 1 verdict and tv = w conj(w) on both.
ScenarioReport theorem4_lens(int r, std::int64_t m, std::int64_t q, std::int64_t p);

ScenarioReport dedekind_congruence(std::int64_t q, std::int64_t k);
ScenarioReport siegel_reciprocity(std::int64_t alpha, std::int64_t beta, std::int64_t gamma);

// Named scenario grids. "default" grids are the acceptance grids.
struct Suite {
    std::string name;
    std::vector<ScenarioReport> reports;
    bool all_pass() const;
    int count(Verdict v) const;
};

Suite theorem1_grid(const std::vector<int>& rs = {3, 4, 5, 7}, std::int64_t max_m = 5,
                    const std::vector<std::int64_t>& ps = {3, 5, 7});
Suite defect_sign_grid();
Suite dedekind_grid(std::int64_t max_k = 25);
Suite siegel_grid(std::int64_t max_ag = 8, std::int64_t max_beta = 4);
Suite theorem3_grid();
Suite theorem2_grid();
Suite frobenius_grid(const std::vector<int>& rs = {3, 4, 5}, std::int64_t max_m = 3,
                     const std::vector<std::int64_t>& ps = {3, 5, 7});
Suite theorem4_grid();

// Every suite above.
std::vector<Suite> run_all();

nlohmann::json to_json(const Suite& suite, bool timing = false);

}  // namespace qinv
