#include "qinv/wrtlens.hpp"

#include <algorithm>

#include "qinv/numth.hpp"

namespace qinv {

using detail::lcm64;

namespace {

void check_spec(const SkeinParams& sp, const LensSpec& spec) {
    if (spec.m < 1 || spec.q < 1) throw PreconditionError("lens space needs m, q > 0");
    if (std::gcd(spec.m, spec.q) != 1) throw PreconditionError("lens space needs gcd(m, q) = 1");
    sp.check_color(spec.c);
}

// Descends to order t and insists on denominators supported on 2r.
WrtValue finish(const SkeinParams& sp, CycElem ambient) {
    auto canonical = descend(ambient, sp.t());
    if (!canonical)
        throw ConsistencyError("WRT value does not descend to order " + std::to_string(sp.t()));
    const auto allowed = detail::prime_factors(2 * sp.r());
    for (auto p : denominator_primes(*canonical))
        if (std::find(allowed.begin(), allowed.end(), p) == allowed.end())
            throw ConsistencyError("WRT value has a denominator prime " + std::to_string(p) + " outside 2r");
    return {std::move(ambient), std::move(*canonical)};
}

}  // namespace

std::int64_t wrt_ambient_order(const SkeinParams& sp, const LensSpec& spec) {
    const std::int64_t r = sp.r(), m = spec.m, q = spec.q;
    return lcm64(lcm64(lcm64(lcm64(8, sp.t()), 4 * r * m * q), 8 * q), 16 * r * m);
}

WrtValue wrt_lens(const SkeinParams& sp, const LensSpec& spec) {
    check_spec(sp, spec);
    const std::int64_t r = sp.r(), m = spec.m, q = spec.q, l = spec.c + 1;
    const std::int64_t n = wrt_ambient_order(sp, spec);
    const std::int64_t three_def = defect_s3_to_lens(m, q);

    const std::int64_t period = 4 * q * r, scale = n / period;
    std::vector<std::pair<std::int64_t, std::int64_t>> terms;
    for (int sign : {1, -1})
        for (std::int64_t k = 1; k <= 2 * q * r; ++k) {
            const std::int64_t e = -m * k * k - 2 * (q * l + sign) * k;
            terms.emplace_back(detail::floor_mod(e, period) * scale, sign);
        }
    CycElem value = CycElem::from_monomials(n, terms);

    // 1/sqrt(q) = sqrt(q)/q
    CycElem pre = make_root(n, 8, 3) * make_root(n, 4 * r * m, three_def) * make_root(n, 4 * r * m * q, -q * q - 1) *
                  sqrt_int(q, n);
    pre *= mpq_class(spec.c % 2 == 0 ? -1 : 1, 2 * r * q);
    return finish(sp, pre * value);
}

WrtValue wrt_lens_prereciprocity(const SkeinParams& sp, const LensSpec& spec) {
    check_spec(sp, spec);
    const std::int64_t r = sp.r(), m = spec.m, q = spec.q, l = spec.c + 1;
    const std::int64_t n = lcm64(lcm64(sp.t(), 4 * r * m * q), 16 * r * m);
    const std::int64_t twelve_mq_s = q * defect_s3_to_lens(m, q);

    CycElem total = CycElem::zero(n);
    for (int sign : {1, -1}) {
        std::vector<std::pair<std::int64_t, std::int64_t>> inner;
        for (std::int64_t k = 1; k <= m; ++k)
            inner.emplace_back(detail::floor_mod(q * r * k * k + (q * l + sign) * k, m) * (n / m), 1);
        const auto outer = make_root(n, 4 * r * m * q, q * q * (l * l - 1) + twelve_mq_s + sign * 2 * q * l);
        CycElem part = outer * CycElem::from_monomials(n, inner);
        if (sign > 0)
            total += part;
        else
            total -= part;
    }
    // i (-1)^{c+1} / sqrt(2rm) = i (-1)^{c+1} sqrt(2rm) / (2rm)
    CycElem pre = make_root(n, 4, 1) * sqrt_int(2 * r * m, n);
    pre *= mpq_class(spec.c % 2 == 0 ? -1 : 1, 2 * r * m);
    return finish(sp, pre * total);
}

CycElem wrt_s3_with_colored_unknot(const SkeinParams& sp, int c) { return sp.eta() * sp.delta(c); }

}  // namespace qinv
