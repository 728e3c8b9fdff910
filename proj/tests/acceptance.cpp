// Acceptance run: one PASS/FAIL line per criterion with its time budget.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "golden.hpp"
#include "qinv/cli.hpp"
#include "qinv/jones.hpp"
#include "qinv/numth.hpp"
#include "qinv/skein.hpp"
#include "qinv/tvstate.hpp"
#include "qinv/verify.hpp"
#include "qinv/wrtlens.hpp"
#include "test_support.hpp"

using namespace qinv;

namespace {

const std::string source_dir = QINV_SOURCE_DIR;

std::string slurp(const std::string& rel) {
    std::ifstream in(source_dir + "/" + rel);
    if (!in) throw std::runtime_error("missing fixture " + rel);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Outcome {
    bool ok = true;
    std::string note;
    void check(bool cond, const std::string& what) {
        if (!cond && ok) note = what;
        ok = ok && cond;
    }
};

CycElem cli_wrt(int r, int m, int q) {
    const std::vector<std::string> args{"qinv", "wrt-lens", "--r", std::to_string(r), "--m", std::to_string(m),
                                        "--q", std::to_string(q), "--color", "0", "--json"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    if (dispatch(static_cast<int>(argv.size()), argv.data(), out, err) != 0) throw std::runtime_error(err.str());
    return cyc_from_json(nlohmann::json::parse(out.str())["canonical"]);
}

void suite_check(Outcome& o, const Suite& s) {
    o.check(!s.reports.empty(), s.name + " is empty");
    for (const auto& r : s.reports) o.check(r.verdict == Verdict::pass, r.id + " " + to_string(r.verdict));
    if (o.ok) o.note += s.name + " " + std::to_string(s.reports.size()) + " scenarios; ";
}

int legendre(std::int64_t a, std::int64_t p) {
    std::int64_t r = 1, b = ((a % p) + p) % p;
    for (std::int64_t e = (p - 1) / 2; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r == 1 ? 1 : -1;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t v = 1;
    while (e--) v *= b;
    return v;
}

Outcome golden_vectors() {
    Outcome o;
    o.check(cli_wrt(5, 1, 1) == golden::eta5(), "w5(S^3) differs from the printed polynomial");
    o.check(cli_wrt(5, 3, 1) == golden::w5_l31(), "w5(L(3,1)) differs from the printed polynomial");
    for (const auto& g : {golden::eta5(), golden::w5_l31()})
        o.check(g.order() == 40 && g.denominator() == 10, "golden form is not over 10 in order 40");
    return o;
}

Outcome printed_difference() {
    Outcome o;
    const auto& sp = SkeinParams::get(5);
    const auto s3 = wrt_lens(sp, {1, 1, 0}).canonical, l31 = wrt_lens(sp, {3, 1, 0}).canonical;
    const auto diff = s3 - power(sp.kappa(), 2) * power(l31, 3);
    o.check(diff == golden::w5_difference(), "difference differs from the printed value");
    o.check(reduce_mod_p(diff, 3).is_zero(), "difference is not zero mod 3");
    o.check(!diff.is_zero(), "difference vanishes identically");
    return o;
}

Outcome theorem1() {
    Outcome o;
    suite_check(o, theorem1_grid());
    return o;
}

Outcome defect_sign_dedekind() {
    Outcome o;
    const auto eq = defect_sign_grid();
    std::set<std::int64_t> ms;
    for (const auto& r : eq.reports) ms.insert(r.inputs["m"].get<std::int64_t>());
    o.check(ms == std::set<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9}, "defect sign grid does not cover m <= 9");
    suite_check(o, eq);
    suite_check(o, dedekind_grid(25));
    return o;
}

Outcome siegel() {
    Outcome o;
    suite_check(o, siegel_grid(8, 4));
    return o;
}

Outcome cross_formula() {
    Outcome o;
    std::set<std::tuple<int, std::int64_t, std::int64_t, int>> lenses;
    for (int r : {3, 4, 5, 7})
        for (std::int64_t m = 1; m <= 5; ++m)
            for (std::int64_t q = 1; q <= m; ++q)
                for (std::int64_t p : {3, 5, 7}) {
                    if (std::gcd<std::int64_t>(r, p) != 1 || std::gcd(q, m * p) != 1) continue;
                    for (int c = 0; c <= r - 2; ++c) {
                        lenses.insert({r, m, q, c});
                        lenses.insert({r, m * p, q, c});
                    }
                }
    for (auto [r, m, q, c] : lenses) {
        const auto& sp = SkeinParams::get(r);
        const auto a = wrt_lens(sp, {m, q, c}).canonical;
        const auto b = wrt_lens_prereciprocity(sp, {m, q, c}).canonical;
        o.check(a == b, "formulas differ at r=" + std::to_string(r) + " m=" + std::to_string(m) +
                            " q=" + std::to_string(q) + " c=" + std::to_string(c));
    }
    o.note += std::to_string(lenses.size()) + " lens values";
    return o;
}

Outcome turaev_viro() {
    Outcome o;
    const auto d4 = parse_triangulation(slurp("fixtures/triangulations/s3_boundary_4simplex.json"));
    const auto two = parse_triangulation(slurp("fixtures/triangulations/s3_two_tet.json"));
    const auto l31 = parse_triangulation(slurp("fixtures/triangulations/l3_1.json"));
    o.check(tv(d4, SkeinParams::get(3)) == CycElem::from_rational(1, mpq_class(1, 2)), "tv3(boundary 4-simplex)");
    for (int r : {3, 5}) {
        const auto& sp = SkeinParams::get(r);
        const auto w1 = wrt_lens(sp, {1, 1, 0}).canonical, w3 = wrt_lens(sp, {3, 1, 0}).canonical;
        for (const auto* tri : {&d4, &two})
            o.check(tv(*tri, sp) == w1 * conjugate(w1), "tv(S^3) != |w|^2 at r=" + std::to_string(r));
        o.check(tv(l31, sp) == w3 * conjugate(w3), "tv(L(3,1)) != |w|^2 at r=" + std::to_string(r));
    }
    o.check(theorem4_check(d4, l31, SkeinParams::get(5), 3, 3), "tv5(S^3) != tv5(L(3,1))^3 mod 3");
    return o;
}

Outcome lemmas() {
    Outcome o;
    const std::vector<std::tuple<int, std::int64_t, int>> triples{{3, 5, 1}, {3, 7, 1}, {5, 3, 2}};
    for (int r : {3, 5}) {
        const auto& sp = SkeinParams::get(r);
        for (int n = 1; n <= r - 1; ++n) {
            const auto inv = quantum_int_unit_certificate(sp, n);
            o.check(inv.has_value(), "[n] has no unit certificate");
            if (inv) o.check((*inv * quantum_int(sp, n)).is_one(), "certificate is not an inverse");
        }
        o.check(lemma1_check(sp), "lemma 1 fails at r=" + std::to_string(r));
    }
    for (auto [r, p, s] : triples) {
        const auto& sp = SkeinParams::get(r);
        const auto tag = " at (" + std::to_string(r) + "," + std::to_string(p) + "," + std::to_string(s) + ")";
        o.check(lemma3_check(sp, p, s), "lemma 3" + tag);
        o.check(lemma7_check(sp, p, s), "lemma 7" + tag);
        o.check(prop3_check(sp, p, s), "proposition 3" + tag);
        // The sign and Jacobi factor again, from Euler's criterion.
        const auto ps = ipow(p, s);
        const int branch = (ps + 1) / 2 % r == 0 ? 1 : -1;
        const int c = -branch * ipow(legendre(-2 * r, p), s);
        o.check(eq_mod_p(power(sp.eta(), ps), CycElem::from_integer(sp.t(), c) * sp.eta(), p), "eta sign" + tag);
        o.check(!eq_mod_p(power(sp.eta(), ps), CycElem::from_integer(sp.t(), -c) * sp.eta(), p),
                "opposite eta sign also holds" + tag);
    }
    return o;
}

Outcome theorem3() {
    Outcome o;
    const std::vector<std::tuple<int, std::int64_t, int, int>> cases{
        {3, 5, 1, 0}, {3, 7, 1, 0}, {5, 3, 2, 0}, {5, 3, 2, 1}, {5, 3, 2, 2}, {5, 3, 2, 3}};
    for (auto [r, p, s, c] : cases) {
        const auto rep = theorem3_unknot(r, p, s, c);
        o.check(rep.verdict == Verdict::pass, rep.id + " " + to_string(rep.verdict));
    }
    o.check(theorem3_unknot(3, 7, 1, 0).extra["branch"] == -1, "(3,7,1) is not on the minus branch");
    return o;
}

Outcome jones_periodicity() {
    Outcome o;
    for (const char* name : {"unknot", "unknot_kink", "trefoil", "figure8", "hopf", "t2_3", "t2_4", "t2_5", "t2_7"}) {
        const auto pd = parse_pd(slurp(std::string("fixtures/pd/") + name + ".json"));
        const auto n = analyze(pd).components;
        o.check(jones(pd).at_one() == ipow(-2, n - 1), std::string("V(1) on ") + name);
    }
    const auto unknot = parse_pd(slurp("fixtures/pd/unknot.json"));
    const auto trefoil = parse_pd(slurp("fixtures/pd/trefoil.json"));
    const auto t25 = parse_pd(slurp("fixtures/pd/t2_5.json"));
    const auto t27 = parse_pd(slurp("fixtures/pd/t2_7.json"));

    for (std::int64_t k : {1, 2}) {
        const auto root = make_root_spec(3, k, 6, k);
        const auto rep = corollary1(t25, unknot, 5, 1, root);
        o.check(rep.stated_pairing, "corollary 1 fails for T(2,5) at xi_3^" + std::to_string(k));
    }

    // zeta = -1 on the period-3 trefoil.
    bool threw = false;
    try {
        corollary1(trefoil, unknot, 3, 1, make_root_spec(2, 1, 4, 1));
    } catch (const PreconditionError&) {
        threw = true;
    }
    o.check(threw, "zeta = -1 was not rejected");
    for (int e : {1, -1})
        o.check(!raw_jones_congruence(trefoil, unknot, 3, make_root_spec(2, 1, 4, 1), e),
                "raw congruence holds at zeta = -1");

    // Period 3 is not +-1 mod 8: the Arf invariants differ.
    o.check(arf_from_jones(trefoil) == ArfResult::one && arf_from_jones(unknot) == ArfResult::zero,
            "Arf(trefoil) and Arf(unknot) do not differ");
    for (int e : {1, -1})
        o.check(!raw_jones_congruence(trefoil, unknot, 3, make_root_spec(4, 1, 8, 5), e),
                "raw congruence holds at zeta = i");
    threw = false;
    try {
        corollary2_check(trefoil, unknot, 3);
    } catch (const PreconditionError&) {
        threw = true;
    }
    o.check(threw, "corollary 2 accepted n = 3");

    o.check(corollary2_check(t27, unknot, 7), "corollary 2 fails for T(2,7)");
    o.check(arf_from_jones(unknot) == ArfResult::zero && arf_from_jones(t27) == ArfResult::zero,
            "Arf(T(2,7)) is not 0");
    return o;
}

Outcome ring_properties() {
    Outcome o;
    constexpr int cases = 1000;
    std::mt19937_64 rng(20260);
    const std::vector<std::int64_t> orders{8, 12, 15, 20, 24, 40};
    const std::vector<std::int64_t> primes{3, 7, 11, 13};
    auto pick = [&](const auto& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
    auto coprime_prime = [&](std::int64_t n) {
        for (;;)
            if (auto p = pick(primes); n % p != 0) return p;
    };

    for (int i = 0; i < cases; ++i) {
        const auto n = pick(orders);
        const auto p = coprime_prime(n);
        const auto a = testing::random_elem(rng, n, 1);
        o.check(frobenius_check(a, p), "frobenius_check");
        o.check(reduce_mod_p(power(a, p), p) == reduce_mod_p(galois(a, p % n), p), "a^p != sigma_p(a) mod p");
    }
    for (int i = 0; i < cases; ++i) {
        const auto n = pick(orders);
        const auto p = coprime_prime(n);
        const auto a = testing::random_elem(rng, n, 1), b = testing::random_elem(rng, n, 1);
        o.check(reduce_mod_p(power(a + b, p), p) == reduce_mod_p(power(a, p) + power(b, p), p), "freshman's dream");
    }
    for (int i = 0; i < cases; ++i) {
        const auto d = std::uniform_int_distribution<std::int64_t>(1, 200)(rng);
        std::int64_t core = 1, rest = d;
        for (std::int64_t f = 2; f * f <= rest; ++f)
            while (rest % (f * f) == 0) rest /= f * f;
        core = rest;
        const auto conductor = core % 4 == 1 ? core : 4 * core;
        const auto n = conductor * std::uniform_int_distribution<std::int64_t>(1, 3)(rng);
        const auto s = sqrt_int(d, n);
        o.check(s * s == CycElem::from_integer(n, d), "sqrt_int does not square to d");
        o.check(testing::close(embed_complex(s), std::sqrt(double(d)), 1e-7), "sqrt_int is not the positive root");
    }
    for (int i = 0; i < cases; ++i) {
        const auto n = pick(std::vector<std::int64_t>{3, 4, 5, 8, 12});
        const auto k = pick(std::vector<std::int64_t>{2, 3, 5});
        const auto a = testing::random_elem(rng, n, 7);
        const auto back = descend(lift(a, n * k), n);
        o.check(back.has_value() && *back == a && back->order() == n, "descend(lift(a)) != a");
        // xi_{2n} lies in Q(xi_n) exactly when n is odd.
        o.check(descend(make_root(n * k, n * k, 1), n).has_value() == (n % 2 == 1 && k == 2),
                "descent of a primitive root");
    }
    o.note = std::to_string(cases) + " cases per property";
    return o;
}

struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"golden vectors w5(S^3), w5(L(3,1))", 5, golden_vectors},
        {"printed difference and its vanishing mod 3", 5, printed_difference},
        {"lens congruence grid", 300, theorem1},
        {"reciprocity identity and Dedekind congruence grids", 30, defect_sign_dedekind},
        {"Gauss sum reciprocity grid", 30, siegel},
        {"closed formula vs pre-reciprocity formula", 300, cross_formula},
        {"Turaev-Viro fixtures and lens congruence", 120, turaev_viro},
        {"lemma and proposition coefficient checks", 30, lemmas},
        {"unknot scenarios", 30, theorem3},
        {"Jones evaluations and periodicity", 60, jones_periodicity},
        {"ring property suite", 120, ring_properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool pass = o.ok && secs < c.limit;
        if (o.ok && !pass) o.note = "over the time limit";
        failed += !pass;
        std::printf("%s %2zu  %-52s %8.3f s / %4.0f s  %s\n", pass ? "PASS" : "FAIL", i + 1, c.name, secs, c.limit,
                    o.note.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
