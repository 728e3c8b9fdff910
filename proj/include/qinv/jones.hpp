#pragma once

// Kauffman bracket, Jones polynomial, Arf invariant and the periodicity
// congruences for links given by PD codes.
//
// PD convention: X[a,b,c,d] lists the four arcs at a crossing counterclockwise
// starting from the incoming under-strand, so the under-strand runs a -> c.
// Arcs are numbered consecutively along each oriented component, which fixes
// the direction of the over-strand b - d.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qinv/common.hpp"
#include "qinv/cyclo.hpp"
#include "qinv/laurent.hpp"

namespace qinv {

class MalformedDiagram : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct PlanarDiagram {
    std::vector<std::array<int, 4>> crossings;  // empty: the crossingless unknot
};

// {"crossings": [[a,b,c,d], ...]}
PlanarDiagram parse_pd(const std::string& text);
PlanarDiagram pd_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PlanarDiagram& pd);

struct DiagramInfo {
    int components = 0;
    std::vector<int> sign;            // per crossing, +1 or -1
    std::vector<int> under_component; // per crossing
    std::vector<int> over_component;
    std::vector<bool> over_b_to_d;    // over-strand runs b -> d
    int writhe = 0;
    std::vector<std::vector<int>> linking;  // components x components, zero diagonal

    // Every component has even total linking number with the others.
    bool proper() const;
};

// Validates the diagram (each arc twice, consistent orientation) and
// derives its signs, components and linking numbers.
DiagramInfo analyze(const PlanarDiagram& pd);

// <D> in the variable A, normalized by <unknot> = 1. Not a link invariant:
// depends on the writhe.
LaurentPoly kauffman_bracket(const PlanarDiagram& pd);
// 2^n state expansion.
LaurentPoly kauffman_bracket_states(const PlanarDiagram& pd, Exec exec = Exec::parallel);
// Crossing-by-crossing contraction over boundary matchings.
LaurentPoly kauffman_bracket_frontier(const PlanarDiagram& pd);

// Writhe-normalized bracket (-A^3)^{-w} <D>, still in A.
LaurentPoly normalized_bracket(const PlanarDiagram& pd);
// V_L in z = sqrt(t), from the normalized bracket under A^-2 = z.
LaurentPoly jones(const PlanarDiagram& pd);
LaurentPoly jones_from_bracket(const LaurentPoly& bracket, int writhe);

// zeta = xi_N^k with an explicit square root xi_M^j, (xi_M^j)^2 = zeta.
struct RootSpec {
    std::int64_t order = 1, k = 0;
    std::int64_t sqrt_order = 2, sqrt_k = 0;

    std::int64_t ambient() const;
    CycElem zeta() const;
    CycElem sqrt_zeta() const;
};

// Throws PreconditionError unless the square condition holds exactly.
RootSpec make_root_spec(std::int64_t order, std::int64_t k, std::int64_t sqrt_order, std::int64_t sqrt_k);
// The same zeta with sqrt replaced by its inverse: a square root of zeta^-1.
RootSpec inverse_root(const RootSpec& root);

// V(z = sqrt(zeta)).
CycElem evaluate_at_root(const LaurentPoly& v, const RootSpec& root);

enum class ArfResult { zero, one, non_proper };
std::string to_string(ArfResult a);

// From V(i) with sqrt(i) = xi_8^5.
ArfResult arf_from_jones(const PlanarDiagram& pd);

struct Corollary1Report {
    int branch = 0;            // +1: zeta^{(p^s+1)/2} = 1, -1: zeta^{(p^s-1)/2} = 1
    bool both_branches = false;
    CycElem cover_value;       // V_cover(sqrt zeta)
    CycElem paired_value;      // V_quotient(zeta^{-+1}), sqrt chosen compatibly
    CycElem other_value;       // V_quotient(zeta^{+-1})
    bool stated_pairing = false;
    bool other_pairing = false;
};

// Checks V_cover(zeta) = V_quotient(zeta^{-+1}) mod p. Rejects zeta = -1,
// zeta outside both branches, p not an odd prime, p dividing the order of
// the root, and pairs whose component counts differ mod p - 1.
Corollary1Report corollary1(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p, int s,
                            const RootSpec& root);
bool corollary1_check(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p, int s,
                      const RootSpec& root);

// V_cover(sqrt zeta) = V_quotient(sqrt zeta^e) mod p with no hypotheses,
// e = +1 or -1 (the root inverted).
bool raw_jones_congruence(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p,
                          const RootSpec& root, int e);

// Roots zeta of order dividing (p^s +- 1)/2, zeta != -1, each with
// sqrt(zeta) = xi_{2d}^k for zeta = xi_d^k primitive.
std::vector<RootSpec> admissible_roots(std::int64_t p, int s);

// Arf(cover) = Arf(quotient). Requires n odd with every prime-power factor
// = +-1 mod 8 and both links proper.
bool corollary2_check(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t n);

// #cover = #quotient mod p - 1.
bool component_counts_compatible(const PlanarDiagram& cover, const PlanarDiagram& quotient, std::int64_t p);

// Closure of a braid word on `strands` strands; generator i > 0 is sigma_i
// (strand i over strand i+1, a positive crossing), -i its inverse.
PlanarDiagram pd_from_braid(int strands, const std::vector<int>& word);

// All crossings switched.
PlanarDiagram mirror(const PlanarDiagram& pd);

}  // namespace qinv
