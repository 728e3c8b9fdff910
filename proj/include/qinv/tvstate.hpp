#pragma once

// Turaev-Viro state sums on face-gluing triangulations.
//
// Face f of a tetrahedron is the face opposite vertex f. A gluing of face f
// of tetrahedron i carries a permutation perm of {0,1,2,3} sending the
// vertices of tetrahedron i to those of the target, with perm[f] = g.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qinv/cyclo.hpp"
#include "qinv/skein.hpp"

namespace qinv {

struct Gluing {
    int tet = -1;
    int face = -1;
    std::array<int, 4> perm{0, 1, 2, 3};
};

struct Triangulation {
    int tets = 0;
    // gluings[i][f]; nullopt marks an unglued face (rejected by validate).
    std::vector<std::array<std::optional<Gluing>, 4>> gluings;
};

class TriangulationError : public std::invalid_argument {
public:
    enum class Kind { malformed, unglued_face, involution, non_orientable, euler_characteristic };
    TriangulationError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// {"tets": n, "gluings": [[{"tet": j, "face": g, "perm": [..]} x 4] x n]}
Triangulation parse_triangulation(const std::string& text);
Triangulation triangulation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Triangulation& tri);

// Edge slots of a tetrahedron, in this order.
inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

struct Skeleton {
    int vertices = 0, edges = 0, faces = 0, tets = 0;
    std::vector<std::array<int, 6>> tet_edges;   // edge class of each slot
    std::vector<std::array<int, 4>> tet_faces;   // face class of each face
    std::vector<std::array<int, 3>> face_edges;  // edge classes of each face class
    std::vector<int> edge_degree;                // tetrahedron slots per edge class
    std::vector<int> edge_face_incidence;        // face slots per edge class

    int euler_characteristic() const { return vertices - edges + faces - tets; }
};

// Checks closedness, involution, orientability and chi = 0 (each failure
// raises a TriangulationError of a distinct kind) and returns the skeleton.
Skeleton validate(const Triangulation& tri);

struct Homology {
    int rank = 0;
    std::vector<std::int64_t> torsion;  // invariant factors > 1
    // Order of the group, 0 when infinite.
    std::int64_t order() const;
};

Homology first_homology(const Triangulation& tri);

// Calls visit(colors) for every admissible edge coloring, colors indexed by
// edge class. Deterministic order.
void enumerate_colorings(const Skeleton& sk, const SkeinParams& sp,
                         const std::function<void(const std::vector<int>&)>& visit);
std::int64_t count_colorings(const Skeleton& sk, const SkeinParams& sp);

// The state sum, in order 2r.
CycElem tv(const Triangulation& tri, const SkeinParams& sp, Exec exec = Exec::parallel);

// tv(cover) = tv(base)^degree mod p.
bool theorem4_check(const Triangulation& cover, const Triangulation& base, const SkeinParams& sp,
                    std::int64_t p, std::int64_t degree);

// Fixture generators.
Triangulation lens_triangulation(int p, int q);  // p tetrahedra; p = 1 gives S^3
Triangulation boundary_4simplex();
Triangulation two_tet_s3();

}  // namespace qinv
