#include "qinv/tvstate.hpp"

#include <algorithm>
#include <numeric>

namespace qinv {

using Kind = TriangulationError::Kind;

// ---------------------------------------------------------------------------
// JSON

Triangulation triangulation_from_json(const nlohmann::json& j) {
    try {
        Triangulation tri;
        tri.tets = j.at("tets").get<int>();
        if (tri.tets < 1) throw TriangulationError(Kind::malformed, "triangulation needs at least one tetrahedron");
        const auto& gl = j.at("gluings");
        if (!gl.is_array() || static_cast<int>(gl.size()) != tri.tets)
            throw TriangulationError(Kind::malformed, "gluings must list every tetrahedron");
        tri.gluings.resize(tri.tets);
        for (int i = 0; i < tri.tets; ++i) {
            const auto& faces = gl[i];
            if (!faces.is_array() || faces.size() != 4)
                throw TriangulationError(Kind::malformed, "tetrahedron " + std::to_string(i) + " needs 4 faces");
            for (int f = 0; f < 4; ++f) {
                if (faces[f].is_null()) continue;
                Gluing g;
                g.tet = faces[f].at("tet").get<int>();
                g.face = faces[f].at("face").get<int>();
                const auto perm = faces[f].at("perm").get<std::vector<int>>();
                if (perm.size() != 4) throw TriangulationError(Kind::malformed, "perm must have 4 entries");
                std::copy(perm.begin(), perm.end(), g.perm.begin());
                tri.gluings[i][f] = g;
            }
        }
        return tri;
    } catch (const nlohmann::json::exception& e) {
        throw TriangulationError(Kind::malformed, std::string("triangulation JSON: ") + e.what());
    }
}

Triangulation parse_triangulation(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw TriangulationError(Kind::malformed, std::string("triangulation JSON: ") + e.what());
    }
    auto tri = triangulation_from_json(j);
    validate(tri);
    return tri;
}

nlohmann::json to_json(const Triangulation& tri) {
    nlohmann::json gl = nlohmann::json::array();
    for (const auto& faces : tri.gluings) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& g : faces) {
            if (!g) {
                row.push_back(nullptr);
                continue;
            }
            row.push_back({{"tet", g->tet}, {"face", g->face}, {"perm", g->perm}});
        }
        gl.push_back(row);
    }
    return {{"tets", tri.tets}, {"gluings", gl}};
}

// ---------------------------------------------------------------------------
// Skeleton

namespace {

// Union-find carrying the parity of each element relative to its root.
class ParityDsu {
public:
    explicit ParityDsu(int n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::pair<int, int> find(int x) {
        int par = 0, root = x;
        while (parent_[root] != root) {
            par ^= parity_[root];
            root = parent_[root];
        }
        // path compression
        int cur = x, cur_par = par;
        while (parent_[cur] != cur) {
            const int next = parent_[cur];
            const int next_par = cur_par ^ parity_[cur];
            parent_[cur] = root;
            parity_[cur] = cur_par;
            cur = next;
            cur_par = next_par;
        }
        return {root, par};
    }

    // Requires parity(a) ^ parity(b) == rel; false on contradiction.
    bool unite(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == rel;
        parent_[rb] = ra;
        parity_[rb] = pa ^ pb ^ rel;
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<int> parity_;
};

int perm_sign(const std::array<int, 4>& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

int edge_index(int u, int v) {
    if (u > v) std::swap(u, v);
    for (int e = 0; e < 6; ++e)
        if (kTetEdges[e][0] == u && kTetEdges[e][1] == v) return e;
    return -1;
}

// Class ids in order of first appearance.
std::vector<int> number_classes(int n, const std::function<int(int)>& root, int& count) {
    std::vector<int> id(n, -1), cls(n);
    count = 0;
    for (int s = 0; s < n; ++s) {
        const int r = root(s);
        if (id[r] < 0) id[r] = count++;
        cls[s] = id[r];
    }
    return cls;
}

struct SkeletonData {
    Skeleton sk;
    std::vector<int> vertex_class;  // per (tet, vertex) slot
    std::vector<int> edge_parity;   // per (tet, edge) slot, relative to class root
    std::vector<int> edge_root_slot;
};

SkeletonData build(const Triangulation& tri) {
    const int n = tri.tets;
    if (n < 1 || static_cast<int>(tri.gluings.size()) != n)
        throw TriangulationError(Kind::malformed, "gluing table size does not match tetrahedron count");

    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = tri.gluings[i][f];
            if (!g)
                throw TriangulationError(Kind::unglued_face, "unglued face: tetrahedron " + std::to_string(i) +
                                                                 " face " + std::to_string(f));
            if (g->tet < 0 || g->tet >= n || g->face < 0 || g->face > 3)
                throw TriangulationError(Kind::malformed, "gluing target out of range");
            auto sorted = g->perm;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != std::array<int, 4>{0, 1, 2, 3})
                throw TriangulationError(Kind::malformed, "perm is not a permutation of 0..3");
            if (g->perm[f] != g->face)
                throw TriangulationError(Kind::malformed, "perm must send the glued face's opposite vertex to the target's");
            if (g->tet == i && g->face == f)
                throw TriangulationError(Kind::malformed, "face glued to itself");
        }

    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = *tri.gluings[i][f];
            const auto& back = tri.gluings[g.tet][g.face];
            bool ok = back && back->tet == i && back->face == f;
            if (ok)
                for (int v = 0; v < 4; ++v) ok = ok && back->perm[g.perm[v]] == v;
            if (!ok)
                throw TriangulationError(Kind::involution, "gluing of tetrahedron " + std::to_string(i) + " face " +
                                                               std::to_string(f) + " is not matched by its partner");
        }

    ParityDsu orient(n);
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = *tri.gluings[i][f];
            // Consistent orientations need o_i o_j = -sign(perm).
            const int rel = perm_sign(g.perm) > 0 ? 1 : 0;
            if (!orient.unite(i, g.tet, rel))
                throw TriangulationError(Kind::non_orientable, "triangulation is not orientable");
        }

    ParityDsu verts(4 * n), edges(6 * n), faces(4 * n);
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = *tri.gluings[i][f];
            faces.unite(4 * i + f, 4 * g.tet + g.face, 0);
            for (int v = 0; v < 4; ++v)
                if (v != f) verts.unite(4 * i + v, 4 * g.tet + g.perm[v], 0);
            for (int e = 0; e < 6; ++e) {
                const int u = kTetEdges[e][0], v = kTetEdges[e][1];
                if (u == f || v == f) continue;
                const int pu = g.perm[u], pv = g.perm[v];
                if (!edges.unite(6 * i + e, 6 * g.tet + edge_index(pu, pv), pu > pv ? 1 : 0))
                    throw TriangulationError(Kind::malformed, "an edge is identified with itself reversed");
            }
        }

    SkeletonData d;
    auto& sk = d.sk;
    sk.tets = n;
    d.vertex_class = number_classes(4 * n, [&](int s) { return verts.find(s).first; }, sk.vertices);
    const auto edge_class = number_classes(6 * n, [&](int s) { return edges.find(s).first; }, sk.edges);
    const auto face_class = number_classes(4 * n, [&](int s) { return faces.find(s).first; }, sk.faces);

    d.edge_parity.resize(6 * n);
    d.edge_root_slot.assign(sk.edges, -1);
    for (int s = 0; s < 6 * n; ++s) {
        auto [root, par] = edges.find(s);
        d.edge_parity[s] = par;
        d.edge_root_slot[edge_class[s]] = root;
    }

    sk.tet_edges.resize(n);
    sk.tet_faces.resize(n);
    sk.edge_degree.assign(sk.edges, 0);
    for (int i = 0; i < n; ++i) {
        for (int e = 0; e < 6; ++e) {
            sk.tet_edges[i][e] = edge_class[6 * i + e];
            ++sk.edge_degree[edge_class[6 * i + e]];
        }
        for (int f = 0; f < 4; ++f) sk.tet_faces[i][f] = face_class[4 * i + f];
    }
    sk.face_edges.assign(sk.faces, {-1, -1, -1});
    std::vector<bool> seen(sk.faces, false);
    sk.edge_face_incidence.assign(sk.edges, 0);
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const int fc = face_class[4 * i + f];
            if (seen[fc]) continue;
            seen[fc] = true;
            int k = 0;
            for (int e = 0; e < 6; ++e) {
                if (kTetEdges[e][0] == f || kTetEdges[e][1] == f) continue;
                sk.face_edges[fc][k++] = edge_class[6 * i + e];
                ++sk.edge_face_incidence[edge_class[6 * i + e]];
            }
        }

    if (sk.euler_characteristic() != 0)
        throw TriangulationError(Kind::euler_characteristic,
                                 "V - E + F - T = " + std::to_string(sk.euler_characteristic()) + ", expected 0");
    return d;
}

// Nonzero diagonal of the Smith normal form.
std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> m) {
    std::vector<mpz_class> diag;
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        while (true) {
            std::size_t pi = rows, pj = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (sgn(m[i][j]) != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) pi = i, pj = j;
            if (pi == rows) return diag;
            std::swap(m[pi], m[t]);
            for (auto& row : m) std::swap(row[pj], row[t]);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (sgn(m[i][t]) == 0) continue;
                const mpz_class q = m[i][t] / m[t][t];
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (sgn(m[i][t]) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (sgn(m[t][j]) == 0) continue;
                const mpz_class q = m[t][j] / m[t][t];
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (sgn(m[t][j]) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(m[i][j].get_mpz_t(), m[t][t].get_mpz_t())) {
                        for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(abs(m[t][t]));
    }
    return diag;
}

}  // namespace

Skeleton validate(const Triangulation& tri) { return build(tri).sk; }

std::int64_t Homology::order() const {
    if (rank > 0) return 0;
    std::int64_t o = 1;
    for (auto t : torsion) o *= t;
    return o;
}

Homology first_homology(const Triangulation& tri) {
    const auto d = build(tri);
    const auto& sk = d.sk;
    const int n = tri.tets;

    // d1: edges -> vertices, d2: faces -> edges.
    std::vector<std::vector<mpz_class>> d1(sk.vertices, std::vector<mpz_class>(sk.edges));
    for (int ec = 0; ec < sk.edges; ++ec) {
        const int slot = d.edge_root_slot[ec];
        const int i = slot / 6, e = slot % 6;
        d1[d.vertex_class[4 * i + kTetEdges[e][1]]][ec] += 1;
        d1[d.vertex_class[4 * i + kTetEdges[e][0]]][ec] -= 1;
    }
    std::vector<std::vector<mpz_class>> d2(sk.edges, std::vector<mpz_class>(sk.faces));
    std::vector<bool> seen(sk.faces, false);
    for (int i = 0; i < n; ++i)
        for (int f = 0; f < 4; ++f) {
            const int fc = sk.tet_faces[i][f];
            if (seen[fc]) continue;
            seen[fc] = true;
            std::array<int, 3> v{};
            int k = 0;
            for (int x = 0; x < 4; ++x)
                if (x != f) v[k++] = x;
            const std::array<std::pair<int, int>, 3> bd{{{edge_index(v[1], v[2]), 1},
                                                         {edge_index(v[0], v[2]), -1},
                                                         {edge_index(v[0], v[1]), 1}}};
            for (auto [e, sign] : bd) {
                const int slot = 6 * i + e;
                d2[sk.tet_edges[i][e]][fc] += d.edge_parity[slot] ? -sign : sign;
            }
        }

    const auto diag1 = smith_diagonal(d1);
    const auto diag2 = smith_diagonal(d2);
    Homology h;
    h.rank = sk.edges - static_cast<int>(diag1.size()) - static_cast<int>(diag2.size());
    for (const auto& x : diag2)
        if (x > 1) h.torsion.push_back(x.get_si());
    return h;
}

// ---------------------------------------------------------------------------
// Colorings and the state sum

namespace {

struct Plan {
    int colors = 0;
    std::vector<int> order;                   // edge class at each position
    std::vector<std::vector<int>> completes;  // faces whose last edge is at position k
    std::vector<char> adm;                    // admissibility table (colors^3)

    bool ok(int a, int b, int c) const { return adm[(a * colors + b) * colors + c]; }
};

Plan make_plan(const Skeleton& sk, const SkeinParams& sp) {
    Plan plan;
    plan.colors = sp.r() - 1;
    plan.order.resize(sk.edges);
    std::iota(plan.order.begin(), plan.order.end(), 0);
    std::stable_sort(plan.order.begin(), plan.order.end(), [&](int a, int b) {
        return sk.edge_face_incidence[a] > sk.edge_face_incidence[b];
    });
    std::vector<int> pos(sk.edges);
    for (int k = 0; k < sk.edges; ++k) pos[plan.order[k]] = k;
    plan.completes.assign(sk.edges, {});
    for (int fc = 0; fc < sk.faces; ++fc) {
        const auto& fe = sk.face_edges[fc];
        plan.completes[std::max({pos[fe[0]], pos[fe[1]], pos[fe[2]]})].push_back(fc);
    }
    const int c = plan.colors;
    plan.adm.resize(c * c * c);
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b)
            for (int x = 0; x < c; ++x) plan.adm[(a * c + b) * c + x] = sp.admissible(a, b, x);
    return plan;
}

bool faces_ok(const Plan& plan, const Skeleton& sk, const std::vector<int>& col, int k) {
    for (int fc : plan.completes[k]) {
        const auto& fe = sk.face_edges[fc];
        if (!plan.ok(col[fe[0]], col[fe[1]], col[fe[2]])) return false;
    }
    return true;
}

// Depth-first extension from position k.
void extend(const Plan& plan, const Skeleton& sk, std::vector<int>& col, int k,
            const std::function<void(const std::vector<int>&)>& visit) {
    if (k == sk.edges) {
        visit(col);
        return;
    }
    const int e = plan.order[k];
    for (int c = 0; c < plan.colors; ++c) {
        col[e] = c;
        if (faces_ok(plan, sk, col, k)) extend(plan, sk, col, k + 1, visit);
    }
    col[e] = -1;
}

CycElem contribution(const Skeleton& sk, const SkeinParams& sp, const std::vector<int>& col) {
    CycElem w = CycElem::one(sp.lambda_order());
    for (int e = 0; e < sk.edges; ++e) w *= sp.delta(col[e]);
    for (int f = 0; f < sk.faces; ++f) {
        const auto& fe = sk.face_edges[f];
        w *= sp.theta_inverse(col[fe[0]], col[fe[1]], col[fe[2]]);
    }
    for (int t = 0; t < sk.tets; ++t) {
        const auto& te = sk.tet_edges[t];
        // slots 01,02,03,12,13,23 -> opposite pairs (02,13), (03,12), (01,23)
        w *= sp.tet(col[te[1]], col[te[2]], col[te[4]], col[te[3]], col[te[0]], col[te[5]]);
    }
    return w;
}

// Admissible partial colorings of the first `depth` positions.
std::vector<std::vector<int>> prefixes(const Plan& plan, const Skeleton& sk, int depth) {
    std::vector<std::vector<int>> out;
    std::vector<int> col(sk.edges, -1);
    std::function<void(int)> rec = [&](int k) {
        if (k == depth) {
            out.push_back(col);
            return;
        }
        const int e = plan.order[k];
        for (int c = 0; c < plan.colors; ++c) {
            col[e] = c;
            if (faces_ok(plan, sk, col, k)) rec(k + 1);
        }
        col[e] = -1;
    };
    rec(0);
    return out;
}

}  // namespace

void enumerate_colorings(const Skeleton& sk, const SkeinParams& sp,
                         const std::function<void(const std::vector<int>&)>& visit) {
    const auto plan = make_plan(sk, sp);
    std::vector<int> col(sk.edges, -1);
    extend(plan, sk, col, 0, visit);
}

std::int64_t count_colorings(const Skeleton& sk, const SkeinParams& sp) {
    std::int64_t n = 0;
    enumerate_colorings(sk, sp, [&](const std::vector<int>&) { ++n; });
    return n;
}

CycElem tv(const Triangulation& tri, const SkeinParams& sp, Exec exec) {
    const auto sk = validate(tri);
    const auto n2 = sp.lambda_order();
    CycElem sum = CycElem::zero(n2);

    if (exec == Exec::serial || max_threads() == 1) {
        enumerate_colorings(sk, sp, [&](const std::vector<int>& col) { sum += contribution(sk, sp, col); });
    } else {
        const auto plan = make_plan(sk, sp);
        const int depth = std::min(sk.edges, 3);
        const auto pre = prefixes(plan, sk, depth);
        std::vector<CycElem> partial(pre.size(), CycElem::zero(n2));
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t k = 0; k < static_cast<std::int64_t>(pre.size()); ++k) {
            auto col = pre[k];
            CycElem acc = CycElem::zero(n2);
            extend(plan, sk, col, depth, [&](const std::vector<int>& c) { acc += contribution(sk, sp, c); });
            partial[k] = std::move(acc);
        }
        for (const auto& x : partial) sum += x;
    }

    const CycElem lam = sp.lambda();
    const CycElem d = lam - inverse(lam);
    const CycElem eta2 = -(d * d) * mpq_class(1, n2);
    return power(eta2, sk.vertices) * sum;
}

bool theorem4_check(const Triangulation& cover, const Triangulation& base, const SkeinParams& sp,
                    std::int64_t p, std::int64_t degree) {
    if (p < 3 || !detail::is_prime(p)) throw PreconditionError("theorem4: p must be an odd prime");
    if (std::gcd<std::int64_t>(p, 2 * sp.r()) != 1) throw PreconditionError("theorem4: p must be prime to 2r");
    if (degree < 1) throw PreconditionError("theorem4: cover degree must be positive");
    return eq_mod_p(tv(cover, sp), power(tv(base, sp), degree), p);
}

// ---------------------------------------------------------------------------
// Fixtures

Triangulation lens_triangulation(int p, int q) {
    if (p < 1) throw PreconditionError("lens_triangulation: p must be positive");
    if (std::gcd(p, q) != 1) throw PreconditionError("lens_triangulation: gcd(p, q) must be 1");
    // Tetrahedron i has vertices (N, S, v_i, v_{i+1}) of a suspended p-gon;
    // the top and bottom disks are identified with a 2 pi q / p twist.
    Triangulation tri;
    tri.tets = p;
    tri.gluings.resize(p);
    const int qq = ((q % p) + p) % p;
    const std::array<int, 4> swap23{0, 1, 3, 2}, swap01{1, 0, 2, 3};
    for (int i = 0; i < p; ++i) {
        tri.gluings[i][3] = Gluing{(i - 1 + p) % p, 2, swap23};
        tri.gluings[i][2] = Gluing{(i + 1) % p, 3, swap23};
        tri.gluings[i][1] = Gluing{(i + qq) % p, 0, swap01};
        tri.gluings[i][0] = Gluing{(i - qq + p) % p, 1, swap01};
    }
    return tri;
}

Triangulation boundary_4simplex() {
    std::vector<std::array<int, 4>> simplices;
    for (int missing = 4; missing >= 0; --missing) {
        std::array<int, 4> s{};
        int k = 0;
        for (int v = 0; v < 5; ++v)
            if (v != missing) s[k++] = v;
        simplices.push_back(s);
    }
    Triangulation tri;
    tri.tets = 5;
    tri.gluings.resize(5);
    for (int i = 0; i < 5; ++i)
        for (int f = 0; f < 4; ++f) {
            // the other simplex containing every label of face f
            for (int j = 0; j < 5; ++j) {
                if (j == i) continue;
                int shared = 0;
                for (int v = 0; v < 4; ++v)
                    if (v != f && std::count(simplices[j].begin(), simplices[j].end(), simplices[i][v])) ++shared;
                if (shared != 3) continue;
                Gluing g;
                g.tet = j;
                for (int v = 0; v < 4; ++v) {
                    if (v == f) continue;
                    g.perm[v] = static_cast<int>(
                        std::find(simplices[j].begin(), simplices[j].end(), simplices[i][v]) - simplices[j].begin());
                }
                for (int w = 0; w < 4; ++w)
                    if (std::find(simplices[i].begin(), simplices[i].end(), simplices[j][w]) == simplices[i].end())
                        g.face = w;
                g.perm[f] = g.face;
                tri.gluings[i][f] = g;
            }
        }
    return tri;
}

Triangulation two_tet_s3() {
    Triangulation tri;
    tri.tets = 2;
    tri.gluings.resize(2);
    for (int f = 0; f < 4; ++f) {
        tri.gluings[0][f] = Gluing{1, f, {0, 1, 2, 3}};
        tri.gluings[1][f] = Gluing{0, f, {0, 1, 2, 3}};
    }
    return tri;
}

}  // namespace qinv
