#include <fstream>
#include <sstream>

#include "doctest.h"
#include "golden.hpp"
#include "qinv/tvstate.hpp"
#include "qinv/wrtlens.hpp"

using namespace qinv;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Triangulation fixture(const std::string& name) {
    return parse_triangulation(slurp("fixtures/triangulations/" + name + ".json"));
}

// Counts admissible colorings by trying every assignment.
std::int64_t brute_force_count(const Skeleton& sk, int r) {
    const int colors = r - 1;
    auto adm = [&](int a, int b, int c) {
        return (a + b + c) % 2 == 0 && a + b + c <= 2 * r - 4 && a <= b + c && b <= a + c && c <= a + b;
    };
    std::int64_t total = 1;
    for (int e = 0; e < sk.edges; ++e) total *= colors;
    std::int64_t count = 0;
    std::vector<int> col(sk.edges);
    for (std::int64_t code = 0; code < total; ++code) {
        std::int64_t x = code;
        for (int e = 0; e < sk.edges; ++e) {
            col[e] = static_cast<int>(x % colors);
            x /= colors;
        }
        bool ok = true;
        for (const auto& fe : sk.face_edges) ok = ok && adm(col[fe[0]], col[fe[1]], col[fe[2]]);
        count += ok;
    }
    return count;
}

CycElem abs2(const CycElem& w) { return w * conjugate(w); }

TriangulationError::Kind kind_of(const Triangulation& tri) {
    try {
        validate(tri);
    } catch (const TriangulationError& e) {
        return e.kind();
    }
    FAIL("expected a validation error");
    return TriangulationError::Kind::malformed;
}

}  // namespace

TEST_CASE("fixture files match the generators") {
    CHECK(to_json(fixture("s3_boundary_4simplex")) == to_json(boundary_4simplex()));
    CHECK(to_json(fixture("s3_two_tet")) == to_json(two_tet_s3()));
    CHECK(to_json(fixture("l2_1")) == to_json(lens_triangulation(2, 1)));
    CHECK(to_json(fixture("l3_1")) == to_json(lens_triangulation(3, 1)));
    CHECK(to_json(fixture("l5_1")) == to_json(lens_triangulation(5, 1)));
    CHECK(to_json(fixture("l5_2")) == to_json(lens_triangulation(5, 2)));
    const auto tri = boundary_4simplex();
    CHECK(to_json(triangulation_from_json(to_json(tri))) == to_json(tri));
}

TEST_CASE("skeleton and homology") {
    const auto sk = validate(boundary_4simplex());
    CHECK(sk.vertices == 5);
    CHECK(sk.edges == 10);
    CHECK(sk.faces == 10);
    CHECK(sk.tets == 5);
    CHECK(first_homology(boundary_4simplex()).order() == 1);
    CHECK(first_homology(two_tet_s3()).order() == 1);
    CHECK(first_homology(lens_triangulation(1, 1)).order() == 1);
    for (int p = 2; p <= 9; ++p)
        for (int q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const auto h = first_homology(lens_triangulation(p, q));
            CHECK(h.rank == 0);
            CHECK(h.order() == p);
        }
}

TEST_CASE("validation errors are distinct") {
    using K = TriangulationError::Kind;
    auto tri = two_tet_s3();
    tri.gluings[0][2].reset();
    CHECK(kind_of(tri) == K::unglued_face);
    CHECK_THROWS_AS(parse_triangulation(R"({"tets": 1, "gluings": [[null, null, null, null]]})"),
                    TriangulationError);

    tri = two_tet_s3();
    tri.gluings[1][2]->perm = {1, 0, 2, 3};
    CHECK(kind_of(tri) == K::involution);

    // one tetrahedron, faces 2 <-> 3 by an even permutation
    Triangulation bad;
    bad.tets = 1;
    bad.gluings.resize(1);
    bad.gluings[0][0] = Gluing{0, 1, {1, 0, 2, 3}};
    bad.gluings[0][1] = Gluing{0, 0, {1, 0, 2, 3}};
    bad.gluings[0][2] = Gluing{0, 3, {1, 0, 3, 2}};
    bad.gluings[0][3] = Gluing{0, 2, {1, 0, 3, 2}};
    CHECK(kind_of(bad) == K::non_orientable);

    CHECK_THROWS_AS(parse_triangulation("{not json"), TriangulationError);
    CHECK_THROWS_AS(parse_triangulation(R"({"tets": 1, "gluings": []})"), TriangulationError);

    // Two tetrahedra with every face of one glued to the other: some of these
    // are orientable with a non-spherical vertex link (ideal triangulations).
    std::array<int, 4> perm{0, 1, 2, 3};
    std::vector<std::array<int, 4>> perms;
    do perms.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    int chi_failures = 0, valid = 0;
    for (const auto& match : perms) {
        std::vector<std::array<int, 4>> choices[4];
        for (int f = 0; f < 4; ++f)
            for (const auto& p : perms)
                if (p[f] == match[f]) choices[f].push_back(p);
        for (int code = 0; code < 6 * 6 * 6 * 6; ++code) {
            Triangulation t;
            t.tets = 2;
            t.gluings.resize(2);
            for (int f = 0, x = code; f < 4; ++f, x /= 6) {
                const auto& p = choices[f][x % 6];
                std::array<int, 4> inv{};
                for (int v = 0; v < 4; ++v) inv[p[v]] = v;
                t.gluings[0][f] = Gluing{1, match[f], p};
                t.gluings[1][match[f]] = Gluing{0, f, inv};
            }
            try {
                const auto sk = validate(t);
                CHECK(sk.euler_characteristic() == 0);
                ++valid;
            } catch (const TriangulationError& e) {
                if (e.kind() == K::euler_characteristic) ++chi_failures;
            }
        }
    }
    CHECK(valid > 0);
}

TEST_CASE("coloring enumeration") {
    for (int r : {3, 4, 5}) {
        const auto& sp = SkeinParams::get(r);
        for (const auto& tri : {boundary_4simplex(), two_tet_s3(), lens_triangulation(3, 1), lens_triangulation(5, 2)}) {
            const auto sk = validate(tri);
            CHECK(count_colorings(sk, sp) == brute_force_count(sk, r));
            bool zero_seen = false;
            enumerate_colorings(sk, sp, [&](const std::vector<int>& c) {
                zero_seen = zero_seen || std::all_of(c.begin(), c.end(), [](int x) { return x == 0; });
            });
            CHECK(zero_seen);
        }
    }
    CHECK(count_colorings(validate(boundary_4simplex()), SkeinParams::get(3)) == 16);
}

TEST_CASE("state sums of S^3") {
    const auto& s3 = SkeinParams::get(3);
    CHECK(tv(boundary_4simplex(), s3) == CycElem::from_rational(6, mpq_class(1, 2)));
    for (int r : {3, 4, 5}) {
        const auto& sp = SkeinParams::get(r);
        const auto a = tv(boundary_4simplex(), sp);
        const auto b = tv(two_tet_s3(), sp);
        const auto c = tv(lens_triangulation(1, 1), sp);
        CHECK(a == b);
        CHECK(a == c);
        CHECK(a == abs2(sp.eta()));
        CHECK(conjugate(a) == a);
    }
    CHECK(tv(two_tet_s3(), SkeinParams::get(5)) == abs2(golden::eta5()));
}

TEST_CASE("state sums of lens spaces equal |w|^2") {
    for (int r : {3, 4, 5}) {
        const auto& sp = SkeinParams::get(r);
        for (auto [p, q] : {std::pair{2, 1}, {3, 1}, {4, 1}, {5, 1}, {5, 2}, {7, 2}, {7, 3}}) {
            CAPTURE(r);
            CAPTURE(p);
            CAPTURE(q);
            const auto value = tv(lens_triangulation(p, q), sp);
            CHECK(value == abs2(wrt_lens(sp, {p, q, 0}).canonical));
            CHECK(conjugate(value) == value);
        }
    }
}

TEST_CASE("serial and parallel state sums agree") {
    const int saved = max_threads();
    set_num_threads(3);
    for (int r : {3, 5}) {
        const auto& sp = SkeinParams::get(r);
        for (const auto& tri : {boundary_4simplex(), lens_triangulation(5, 2)}) {
            const auto s = tv(tri, sp, Exec::serial);
            const auto p = tv(tri, sp, Exec::parallel);
            CHECK(s == p);
            CHECK(to_json(s).dump() == to_json(p).dump());
        }
    }
    set_num_threads(saved);
}

TEST_CASE("free cover congruence") {
    const auto& s5 = SkeinParams::get(5);
    CHECK(theorem4_check(two_tet_s3(), lens_triangulation(3, 1), s5, 3, 3));
    CHECK(theorem4_check(two_tet_s3(), two_tet_s3(), s5, 3, 1));
    CHECK(theorem4_check(boundary_4simplex(), lens_triangulation(5, 1), SkeinParams::get(3), 5, 5));
    CHECK(theorem4_check(lens_triangulation(3, 1), lens_triangulation(3, 1), SkeinParams::get(4), 3, 1));
    CHECK_THROWS_AS(theorem4_check(two_tet_s3(), lens_triangulation(5, 1), s5, 5, 5), PreconditionError);
}
