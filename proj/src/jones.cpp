#include "qinv/jones.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qinv {

// ---------------------------------------------------------------------------
// PD I/O and analysis

PlanarDiagram pd_from_json(const nlohmann::json& j) {
    PlanarDiagram pd;
    try {
        const auto& xs = j.at("crossings");
        if (!xs.is_array()) throw MalformedDiagram("\"crossings\" must be an array");
        for (const auto& x : xs) {
            if (!x.is_array() || x.size() != 4) throw MalformedDiagram("each crossing needs 4 arc labels");
            pd.crossings.push_back({x[0].get<int>(), x[1].get<int>(), x[2].get<int>(), x[3].get<int>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw MalformedDiagram(std::string("PD JSON: ") + e.what());
    }
    return pd;
}

PlanarDiagram parse_pd(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedDiagram(std::string("PD JSON: ") + e.what());
    }
    auto pd = pd_from_json(j);
    analyze(pd);
    return pd;
}

nlohmann::json to_json(const PlanarDiagram& pd) {
    nlohmann::json xs = nlohmann::json::array();
    for (const auto& x : pd.crossings) xs.push_back(x);
    return {{"crossings", xs}};
}

bool DiagramInfo::proper() const {
    for (int i = 0; i < components; ++i) {
        int total = 0;
        for (int j = 0; j < components; ++j) total += linking[i][j];
        if (total % 2) return false;
    }
    return true;
}

namespace {

// Strand 2i is the under-strand (a, c) of crossing i, 2i+1 the over-strand
// (b, d). End 0 is a or b, end 1 is c or d.
std::array<int, 2> strand_labels(const PlanarDiagram& pd, int s) {
    const auto& x = pd.crossings[s / 2];
    return s % 2 == 0 ? std::array{x[0], x[2]} : std::array{x[1], x[3]};
}

struct Incidence {
    int strand, end;
};

}  // namespace

DiagramInfo analyze(const PlanarDiagram& pd) {
    DiagramInfo info;
    const int n = static_cast<int>(pd.crossings.size());
    if (n == 0) {
        info.components = 1;
        info.linking = {{0}};
        return info;
    }

    std::map<int, std::vector<Incidence>> inc;
    for (int s = 0; s < 2 * n; ++s) {
        const auto lab = strand_labels(pd, s);
        inc[lab[0]].push_back({s, 0});
        inc[lab[1]].push_back({s, 1});
    }
    for (const auto& [label, v] : inc)
        if (v.size() != 2)
            throw MalformedDiagram("arc " + std::to_string(label) + " appears " + std::to_string(v.size()) +
                                   " times, expected 2");

    std::vector<int> strand_comp(2 * n, -1);
    std::vector<int> strand_dir(2 * n, 0);  // +1: traversed end 0 -> 1
    int comps = 0;
    for (const auto& [start, v0] : inc) {
        if (strand_comp[v0[0].strand] >= 0) continue;
        // Walk the cycle: leave each label through its incidence not used to enter.
        std::vector<std::pair<int, int>> steps;  // (strand, dir)
        std::vector<int> labels;
        int label = start;
        Incidence via = v0[1];
        while (true) {
            const auto& v = inc[label];
            const Incidence out = (v[0].strand == via.strand && v[0].end == via.end) ? v[1] : v[0];
            const int other_end = 1 - out.end;
            steps.emplace_back(out.strand, out.end == 0 ? 1 : -1);
            labels.push_back(label);
            via = {out.strand, other_end};
            label = strand_labels(pd, out.strand)[other_end];
            if (label == start && via.strand == v0[1].strand && via.end == v0[1].end) break;
            if (steps.size() > 2 * static_cast<std::size_t>(n)) throw MalformedDiagram("component tracing does not close");
        }
        int orient = 0;
        for (auto [s, dir] : steps) {
            if (s % 2) continue;
            if (orient == 0) orient = dir;
            if (dir != orient) throw MalformedDiagram("under-strands disagree on a component's orientation");
        }
        const auto [lo, hi] = std::minmax_element(labels.begin(), labels.end());
        if (*hi - *lo + 1 != static_cast<int>(labels.size()))
            throw MalformedDiagram("arc labels of a component are not consecutive");
        auto numbered = [&, lo = *lo, hi = *hi](int o) {
            std::vector<int> seq = labels;
            if (o < 0) {
                // the reversed walk visits labels in the opposite cyclic order
                std::reverse(seq.begin(), seq.end());
                std::rotate(seq.begin(), seq.end() - 1, seq.end());
            }
            for (std::size_t i = 0; i < seq.size(); ++i) {
                const int x = seq[i], y = seq[(i + 1) % seq.size()];
                if (!(y == x + 1 || (x == hi && y == lo))) return false;
            }
            return true;
        };
        if (orient == 0) orient = numbered(1) ? 1 : -1;
        if (!numbered(orient)) throw MalformedDiagram("arc numbering disagrees with the strand orientation");
        for (auto [s, dir] : steps) {
            strand_comp[s] = comps;
            strand_dir[s] = dir * orient;
        }
        ++comps;
    }

    info.components = comps;
    info.sign.resize(n);
    info.under_component.resize(n);
    info.over_component.resize(n);
    info.over_b_to_d.resize(n);
    std::vector<std::vector<int>> twice(comps, std::vector<int>(comps, 0));
    for (int i = 0; i < n; ++i) {
        info.under_component[i] = strand_comp[2 * i];
        info.over_component[i] = strand_comp[2 * i + 1];
        info.over_b_to_d[i] = strand_dir[2 * i + 1] > 0;
        info.sign[i] = info.over_b_to_d[i] ? -1 : 1;
        info.writhe += info.sign[i];
        const int u = info.under_component[i], o = info.over_component[i];
        if (u != o) {
            twice[u][o] += info.sign[i];
            twice[o][u] += info.sign[i];
        }
    }
    info.linking.assign(comps, std::vector<int>(comps, 0));
    for (int a = 0; a < comps; ++a)
        for (int b = 0; b < comps; ++b) {
            if (twice[a][b] % 2) throw MalformedDiagram("odd crossing sign sum between two components");
            info.linking[a][b] = twice[a][b] / 2;
        }
    return info;
}

// ---------------------------------------------------------------------------
// Bracket

namespace {

// A-smoothing joins (a,b) and (c,d); B-smoothing joins (a,d) and (b,c).
constexpr std::array<std::array<int, 4>, 2> kSmoothing{{{0, 1, 2, 3}, {0, 3, 1, 2}}};

LaurentPoly loop_value() { return LaurentPoly::monomial(2, -1) + LaurentPoly::monomial(-2, -1); }

std::vector<std::array<int, 4>> index_labels(const PlanarDiagram& pd) {
    std::map<int, int> idx;
    for (const auto& x : pd.crossings)
        for (int l : x) idx.emplace(l, 0);
    int k = 0;
    for (auto& [l, i] : idx) i = k++;
    std::vector<std::array<int, 4>> out;
    for (const auto& x : pd.crossings) out.push_back({idx[x[0]], idx[x[1]], idx[x[2]], idx[x[3]]});
    return out;
}

int find_root(std::vector<int>& parent, int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

// counts[a * (m + 2) + loops] for states with a A-smoothings.
void count_states(const std::vector<std::array<int, 4>>& xs, int m, std::uint64_t lo, std::uint64_t hi,
                  std::vector<std::int64_t>& counts) {
    const int n = static_cast<int>(xs.size());
    std::vector<int> parent(m);
    for (std::uint64_t mask = lo; mask < hi; ++mask) {
        std::iota(parent.begin(), parent.end(), 0);
        int loops = m, a = 0;
        for (int i = 0; i < n; ++i) {
            const bool is_a = (mask >> i) & 1;
            a += is_a;
            const auto& sm = kSmoothing[is_a ? 0 : 1];
            for (int h = 0; h < 4; h += 2) {
                const int u = find_root(parent, xs[i][sm[h]]), v = find_root(parent, xs[i][sm[h + 1]]);
                if (u != v) {
                    parent[u] = v;
                    --loops;
                }
            }
        }
        ++counts[a * (m + 2) + loops];
    }
}

}  // namespace

LaurentPoly kauffman_bracket_states(const PlanarDiagram& pd, Exec exec) {
    analyze(pd);
    const int n = static_cast<int>(pd.crossings.size());
    if (n == 0) return 1;
    if (n > 40) throw PreconditionError("state expansion limited to 40 crossings");
    const auto xs = index_labels(pd);
    const int m = 2 * n;
    const std::uint64_t total = std::uint64_t{1} << n;
    std::vector<std::int64_t> counts((n + 1) * (m + 2), 0);

    if (exec == Exec::serial || max_threads() == 1 || n < 8) {
        count_states(xs, m, 0, total, counts);
    } else {
        const std::int64_t chunks = 64;
#pragma omp parallel
        {
            std::vector<std::int64_t> local(counts.size(), 0);
#pragma omp for schedule(dynamic, 1)
            for (std::int64_t c = 0; c < chunks; ++c)
                count_states(xs, m, total * c / chunks, total * (c + 1) / chunks, local);
#pragma omp critical
            for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
        }
    }

    const LaurentPoly d = loop_value();
    std::vector<LaurentPoly> dpow{LaurentPoly(1)};
    for (int l = 1; l <= m; ++l) dpow.push_back(dpow.back() * d);
    LaurentPoly out;
    for (int a = 0; a <= n; ++a)
        for (int loops = 1; loops <= m; ++loops) {
            const auto c = counts[a * (m + 2) + loops];
            if (c) out += LaurentPoly::monomial(a - (n - a), c) * dpow[loops - 1];
        }
    return out;
}

namespace {

using Matching = std::vector<int>;  // flattened sorted (min, max) pairs of dangling labels

// Applies one smoothing of crossing x to a boundary matching. Returns the new
// matching and the number of loops closed.
std::pair<Matching, int> contract(const Matching& state, const std::array<int, 4>& x,
                                  const std::array<int, 4>& smoothing) {
    std::map<int, int> partner;
    for (std::size_t i = 0; i < state.size(); i += 2) {
        partner[state[i]] = state[i + 1];
        partner[state[i + 1]] = state[i];
    }
    // label_link[s]: slot (>= 0) or external label encoded as -(label + 1) - offset
    struct Link {
        bool slot;
        int id;
    };
    std::array<Link, 4> label_link{};
    std::array<int, 4> smooth_link{};
    std::set<int> consumed;
    for (int s = 0; s < 4; ++s) {
        const int l = x[s];
        int twin = -1;
        for (int t = 0; t < 4; ++t)
            if (t != s && x[t] == l) twin = t;
        if (twin >= 0) {
            label_link[s] = {true, twin};
        } else if (auto it = partner.find(l); it != partner.end()) {
            consumed.insert(l);
            const int far = it->second;
            int far_slot = -1;
            for (int t = 0; t < 4; ++t)
                if (t != s && x[t] == far) far_slot = t;
            if (far_slot >= 0)
                label_link[s] = {true, far_slot};
            else
                label_link[s] = {false, far};
        } else {
            label_link[s] = {false, l};
        }
    }
    for (int h = 0; h < 4; h += 2) {
        smooth_link[smoothing[h]] = smoothing[h + 1];
        smooth_link[smoothing[h + 1]] = smoothing[h];
    }

    std::map<int, int> next = partner;
    for (int l : consumed) {
        const int far = partner[l];
        next.erase(l);
        if (next.count(far) && next[far] == l) next.erase(far);
    }
    std::array<bool, 4> seen{};
    for (int s = 0; s < 4; ++s) {
        if (seen[s] || label_link[s].slot) continue;
        // Walk from the external end at s through the crossing.
        int cur = s;
        seen[cur] = true;
        while (true) {
            cur = smooth_link[cur];
            seen[cur] = true;
            if (!label_link[cur].slot) break;
            cur = label_link[cur].id;
            seen[cur] = true;
        }
        const int a = label_link[s].id, b = label_link[cur].id;
        next[a] = b;
        next[b] = a;
    }
    int loops = 0;
    for (int s = 0; s < 4; ++s) {
        if (seen[s]) continue;
        ++loops;
        int cur = s;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = smooth_link[cur];
            seen[cur] = true;
            cur = label_link[cur].id;
        }
    }

    Matching out;
    for (const auto& [a, b] : next)
        if (a < b) {
            out.push_back(a);
            out.push_back(b);
        }
    return {out, loops};
}

}  // namespace

LaurentPoly kauffman_bracket_frontier(const PlanarDiagram& pd) {
    analyze(pd);
    const int n = static_cast<int>(pd.crossings.size());
    if (n == 0) return 1;

    // Greedy order: next crossing shares the most labels with the boundary.
    std::vector<int> order;
    std::vector<bool> used(n, false);
    std::map<int, int> seen_count;
    for (int step = 0; step < n; ++step) {
        int best = -1, best_score = -1;
        for (int i = 0; i < n; ++i) {
            if (used[i]) continue;
            int score = 0;
            for (int l : pd.crossings[i]) score += seen_count[l] == 1;
            if (score > best_score) best = i, best_score = score;
        }
        used[best] = true;
        order.push_back(best);
        for (int l : pd.crossings[best]) ++seen_count[l];
    }

    const LaurentPoly d = loop_value();
    std::map<Matching, LaurentPoly> states{{Matching{}, LaurentPoly(1)}};
    for (int i : order) {
        std::map<Matching, LaurentPoly> next;
        for (const auto& [m, poly] : states)
            for (int which = 0; which < 2; ++which) {
                auto [m2, loops] = contract(m, pd.crossings[i], kSmoothing[which]);
                next[m2] += poly * LaurentPoly::monomial(which == 0 ? 1 : -1) * d.pow(loops);
            }
        states = std::move(next);
    }
    if (states.size() != 1 || !states.begin()->first.empty())
        throw ConsistencyError("frontier contraction left open arcs");
    return states.begin()->second.divide_exact(d);
}

LaurentPoly kauffman_bracket(const PlanarDiagram& pd) {
    return pd.crossings.size() > 20 ? kauffman_bracket_frontier(pd) : kauffman_bracket_states(pd);
}

LaurentPoly jones_from_bracket(const LaurentPoly& bracket, int writhe) {
    LaurentPoly norm = LaurentPoly::monomial(-3 * writhe, writhe % 2 ? -1 : 1) * bracket;
    return norm.substitute_power(-1).divide_exponents(2);
}

LaurentPoly normalized_bracket(const PlanarDiagram& pd) {
    const auto info = analyze(pd);
    return LaurentPoly::monomial(-3 * info.writhe, info.writhe % 2 ? -1 : 1) * kauffman_bracket(pd);
}

LaurentPoly jones(const PlanarDiagram& pd) {
    const auto info = analyze(pd);
    return jones_from_bracket(kauffman_bracket(pd), info.writhe);
}

// ---------------------------------------------------------------------------
// Roots of unity

std::int64_t RootSpec::ambient() const { return detail::lcm64(order, sqrt_order); }
CycElem RootSpec::zeta() const { return make_root(ambient(), order, k); }
CycElem RootSpec::sqrt_zeta() const { return make_root(ambient(), sqrt_order, sqrt_k); }

RootSpec make_root_spec(std::int64_t order, std::int64_t k, std::int64_t sqrt_order, std::int64_t sqrt_k) {
    if (order < 1 || sqrt_order < 1) throw PreconditionError("root orders must be positive");
    RootSpec r{order, detail::floor_mod(k, order), sqrt_order, detail::floor_mod(sqrt_k, sqrt_order)};
    const auto n = r.ambient();
    const auto lhs = detail::floor_mod(2 * r.sqrt_k * (n / sqrt_order), n);
    const auto rhs = detail::floor_mod(r.k * (n / order), n);
    if (lhs != rhs)
        throw PreconditionError("xi_" + std::to_string(sqrt_order) + "^" + std::to_string(sqrt_k) +
                                " is not a square root of xi_" + std::to_string(order) + "^" + std::to_string(k));
    return r;
}

RootSpec inverse_root(const RootSpec& root) {
    return make_root_spec(root.order, -root.k, root.sqrt_order, -root.sqrt_k);
}

CycElem evaluate_at_root(const LaurentPoly& v, const RootSpec& root) {
    return lift(evaluate(v, root.sqrt_order, root.sqrt_k), root.ambient());
}

std::string to_string(ArfResult a) {
    switch (a) {
        case ArfResult::zero: return "0";
        case ArfResult::one: return "1";
        case ArfResult::non_proper: return "non-proper";
    }
    return "?";
}

ArfResult arf_from_jones(const PlanarDiagram& pd) {
    const auto info = analyze(pd);
    const auto v = evaluate_at_root(jones(pd), make_root_spec(4, 1, 8, 5));
    const auto target = power(sqrt_int(2, 8), info.components - 1);
    ArfResult out;
    if (v.is_zero())
        out = ArfResult::non_proper;
    else if (v == target)
        out = ArfResult::zero;
    else if (v == -target)
        out = ArfResult::one;
    else
        throw ConsistencyError("V(i) = " + to_string(v) + " is neither 0 nor +-sqrt(2)^(#L-1)");
    if ((out == ArfResult::non_proper) == info.proper())
        throw ConsistencyError("V(i) disagrees with properness from linking numbers");
    return out;
}

// ---------------------------------------------------------------------------
// Periodicity

namespace {

std::int64_t checked_pow(std::int64_t p, int s) {
    std::int64_t v = 1;
    for (int i = 0; i < s; ++i) {
        if (v > (std::int64_t{1} << 40) / p) throw PreconditionError("p^s too large");
        v *= p;
    }
    return v;
}

void require_odd_prime(std::int64_t p) {
    if (p < 3 || !detail::is_prime(p)) throw PreconditionError("p must be an odd prime");
}

std::int64_t root_order(const RootSpec& r) { return r.order / std::gcd(r.order, r.k); }

}  // namespace

bool component_counts_compatible(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p) {
    require_odd_prime(p);
    return (analyze(cover).components - analyze(quotient).components) % (p - 1) == 0;
}

Corollary1Report corollary1(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p, int s,
                            const RootSpec& root) {
    require_odd_prime(p);
    if (s < 1) throw PreconditionError("s must be positive");
    const auto ps = checked_pow(p, s);
    const auto d = root_order(root);
    if (d == 2) throw PreconditionError("zeta = -1 is excluded");
    const bool plus = ((ps + 1) / 2) % d == 0, minus = ((ps - 1) / 2) % d == 0;
    if (!plus && !minus)
        throw PreconditionError("zeta has order " + std::to_string(d) + ", dividing neither (p^s+1)/2 nor (p^s-1)/2");
    if (root.ambient() % p == 0) throw PreconditionError("p divides the order of the evaluation ring");
    if (!component_counts_compatible(cover, quotient, p))
        throw PreconditionError("component counts differ mod p - 1: not a periodic pair");

    Corollary1Report rep;
    rep.branch = plus ? 1 : -1;
    rep.both_branches = plus && minus;
    const RootSpec paired = plus ? inverse_root(root) : root;
    const RootSpec other = plus ? root : inverse_root(root);
    const auto vq = jones(quotient);
    rep.cover_value = evaluate_at_root(jones(cover), root);
    rep.paired_value = evaluate_at_root(vq, paired);
    rep.other_value = evaluate_at_root(vq, other);
    rep.stated_pairing = eq_mod_p(rep.cover_value, rep.paired_value, p);
    rep.other_pairing = eq_mod_p(rep.cover_value, rep.other_value, p);
    return rep;
}

bool corollary1_check(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p, int s,
                      const RootSpec& root) {
    return corollary1(cover, quotient, p, s, root).stated_pairing;
}

bool raw_jones_congruence(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p,
                          const RootSpec& root, int e) {
    if (e != 1 && e != -1) throw PreconditionError("e must be +-1");
    const auto lhs = evaluate_at_root(jones(cover), root);
    const auto rhs = evaluate_at_root(jones(quotient), e == 1 ? root : inverse_root(root));
    return eq_mod_p(lhs, rhs, p);
}

std::vector<RootSpec> admissible_roots(std::int64_t p, int s) {
    require_odd_prime(p);
    const auto ps = checked_pow(p, s);
    std::set<std::int64_t> orders;
    for (auto m : {(ps + 1) / 2, (ps - 1) / 2})
        for (auto d : detail::divisors(m))
            if (d != 2) orders.insert(d);
    std::vector<RootSpec> out;
    for (auto d : orders)
        for (std::int64_t k = d == 1 ? 0 : 1; k < std::max<std::int64_t>(d, 1); ++k)
            if (d == 1 || std::gcd(k, d) == 1) out.push_back(make_root_spec(d, k, 2 * d, k));
    return out;
}

bool corollary2_check(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t n) {
    if (n < 1 || n % 2 == 0) throw PreconditionError("the period n must be odd");
    for (auto p : detail::prime_factors(n)) {
        std::int64_t q = 1, m = n;
        while (m % p == 0) m /= p, q *= p;
        if (q % 8 != 1 && q % 8 != 7)
            throw PreconditionError(std::to_string(q) + " = " + std::to_string(q % 8) +
                                    " mod 8; every prime-power factor of n must be +-1 mod 8");
    }
    const auto a = arf_from_jones(cover), b = arf_from_jones(quotient);
    if (a == ArfResult::non_proper || b == ArfResult::non_proper)
        throw PreconditionError("both links must be proper");
    return a == b;
}

// ---------------------------------------------------------------------------
// Constructions

PlanarDiagram pd_from_braid(int strands, const std::vector<int>& word) {
    if (strands < 1) throw PreconditionError("a braid needs at least one strand");
    if (word.empty()) {
        if (strands == 1) return {};
        throw PreconditionError("the closure has crossingless components");
    }
    std::vector<int> pos(strands);
    std::iota(pos.begin(), pos.end(), 0);
    int next_label = strands;
    std::vector<std::array<int, 4>> xs;
    std::vector<std::array<std::pair<int, int>, 2>> flows;  // (in, out) of both strands
    std::vector<bool> touched(strands, false);
    for (int g : word) {
        const int i = std::abs(g) - 1;
        if (g == 0 || i + 1 >= strands) throw PreconditionError("generator out of range: " + std::to_string(g));
        touched[i] = touched[i + 1] = true;
        const int x_in = pos[i], y_in = pos[i + 1], x_out = next_label++, y_out = next_label++;
        if (g > 0)
            xs.push_back({y_in, x_out, y_out, x_in});
        else
            xs.push_back({x_in, y_in, x_out, y_out});
        flows.push_back({std::pair{x_in, x_out}, std::pair{y_in, y_out}});
        pos[i] = y_out;
        pos[i + 1] = x_out;
    }
    for (bool t : touched)
        if (!t) throw PreconditionError("the closure has crossingless components");

    // Closing the braid identifies the top label at each position with the bottom one.
    std::vector<int> parent(next_label);
    std::iota(parent.begin(), parent.end(), 0);
    for (int j = 0; j < strands; ++j) parent[find_root(parent, pos[j])] = find_root(parent, j);
    std::map<int, int> succ;
    for (const auto& f : flows)
        for (auto [in, out] : f) succ[find_root(parent, in)] = find_root(parent, out);

    std::map<int, int> relabel;
    int counter = 1;
    for (const auto& x : xs)
        for (int l : x) {
            int arc = find_root(parent, l);
            while (!relabel.count(arc)) {
                relabel[arc] = counter++;
                arc = succ.at(arc);
            }
        }
    PlanarDiagram pd;
    for (const auto& x : xs) {
        std::array<int, 4> y{};
        for (int k = 0; k < 4; ++k) y[k] = relabel.at(find_root(parent, x[k]));
        pd.crossings.push_back(y);
    }
    return pd;
}

PlanarDiagram mirror(const PlanarDiagram& pd) {
    const auto info = analyze(pd);
    PlanarDiagram out;
    for (std::size_t i = 0; i < pd.crossings.size(); ++i) {
        const auto& [a, b, c, d] = pd.crossings[i];
        out.crossings.push_back(info.over_b_to_d[i] ? std::array{b, c, d, a} : std::array{d, a, b, c});
    }
    return out;
}

}  // namespace qinv
