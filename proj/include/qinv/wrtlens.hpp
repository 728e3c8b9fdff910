#pragma once

// WRT invariants of lens spaces with a colored meridian, from the two closed
// Gauss-sum formulas.

#include "qinv/cyclo.hpp"
#include "qinv/skein.hpp"

namespace qinv {

struct LensSpec {
    std::int64_t m = 1;
    std::int64_t q = 1;
    int c = 0;  // meridian color; l = c + 1
};

struct WrtValue {
    CycElem ambient;    // in the order the formula was evaluated in
    CycElem canonical;  // descended to order t
};

// lcm(8, t, 4rmq, 8q, 16rm)
std::int64_t wrt_ambient_order(const SkeinParams& sp, const LensSpec& spec);

// xi_8^3 (-1)^{c+1} / (2r sqrt q) xi_{4rm}^{12m s(q,m)} xi_{4rmq}^{-q^2-1}
//   sum_{+-} +- sum_{n=1}^{2qr} xi_{4qr}^{-m n^2 - 2(ql +- 1) n}
WrtValue wrt_lens(const SkeinParams& sp, const LensSpec& spec);

// i (-1)^{c+1} / sqrt(2rm) sum_{+-} +- xi_{4rmq}^{q^2(l^2-1) + 12mq s(q,m) +- 2ql}
//   sum_{n=1}^{m} xi_m^{q r n^2 + (ql +- 1) n}
WrtValue wrt_lens_prereciprocity(const SkeinParams& sp, const LensSpec& spec);

// eta Delta_c in order t.
CycElem wrt_s3_with_colored_unknot(const SkeinParams& sp, int c);

}  // namespace qinv
