#include "qinv/laurent.hpp"

#include <sstream>

namespace qinv {

LaurentPoly LaurentPoly::monomial(std::int64_t exp, const mpz_class& c) {
    LaurentPoly f;
    f.add_term(exp, c);
    return f;
}

mpz_class LaurentPoly::coeff(std::int64_t exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

std::int64_t LaurentPoly::min_exp() const {
    if (terms_.empty()) throw PreconditionError("min_exp of the zero polynomial");
    return terms_.begin()->first;
}

std::int64_t LaurentPoly::max_exp() const {
    if (terms_.empty()) throw PreconditionError("max_exp of the zero polynomial");
    return terms_.rbegin()->first;
}

void LaurentPoly::add_term(std::int64_t exp, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(exp, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly f = *this;
    for (auto& [e, c] : f.terms_) c = -c;
    return f;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
    return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly LaurentPoly::pow(int n) const {
    if (n < 0) throw PreconditionError("LaurentPoly::pow: negative exponent");
    LaurentPoly out(1), base = *this;
    while (n) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

LaurentPoly LaurentPoly::substitute_power(std::int64_t k) const {
    if (k == 0) throw PreconditionError("substitute_power: k must be nonzero");
    LaurentPoly out;
    for (const auto& [e, c] : terms_) out.add_term(e * k, c);
    return out;
}

LaurentPoly LaurentPoly::divide_exponents(std::int64_t k) const {
    if (k == 0) throw PreconditionError("divide_exponents: k must be nonzero");
    LaurentPoly out;
    for (const auto& [e, c] : terms_) {
        if (e % k != 0) throw PreconditionError("exponent " + std::to_string(e) + " not divisible by " + std::to_string(k));
        out.add_term(e / k, c);
    }
    return out;
}

LaurentPoly LaurentPoly::divide_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw PreconditionError("division by the zero polynomial");
    const std::int64_t dspan = d.max_exp() - d.min_exp();
    const mpz_class& lead = d.terms_.rbegin()->second;
    LaurentPoly q, rem = *this;
    while (!rem.is_zero()) {
        if (rem.max_exp() - rem.min_exp() < dspan) throw PreconditionError("polynomial division is not exact");
        const mpz_class& top = rem.terms_.rbegin()->second;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
            throw PreconditionError("polynomial division is not exact");
        const auto step = monomial(rem.max_exp() - d.max_exp(), top / lead);
        q += step;
        rem -= step * d;
    }
    return q;
}

mpz_class LaurentPoly::at_one() const {
    mpz_class s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
}

std::string LaurentPoly::to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        mpz_class mag = abs(c);
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        if (e == 0) {
            os << mag.get_str();
            continue;
        }
        if (mag != 1) os << mag.get_str() << "*";
        os << var;
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

CycElem evaluate(const LaurentPoly& f, std::int64_t order, std::int64_t k, int sign) {
    if (order < 1) throw PreconditionError("evaluate: order must be positive");
    if (sign != 1 && sign != -1) throw PreconditionError("evaluate: sign must be +-1");
    std::int64_t n = order;
    std::int64_t kk = k;
    if (sign == -1) {
        // -xi_order^k = xi_{2 order}^{2k + order}, or xi_order^{k + order/2} when order is even
        if (order % 2 == 0) {
            kk = k + order / 2;
        } else {
            n = 2 * order;
            kk = 2 * k + order;
        }
    }
    std::vector<mpz_class> nums(n);
    for (const auto& [e, c] : f.terms()) {
        const auto idx = detail::floor_mod(detail::floor_mod(e, n) * detail::floor_mod(kk, n), n);
        nums[idx] += c;
    }
    return CycElem::from_numerators(n, std::move(nums));
}

nlohmann::json to_json(const LaurentPoly& f, const std::string& var) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) terms.push_back({e, c.get_str()});
    return {{"var", var}, {"terms", terms}};
}

LaurentPoly laurent_from_json(const nlohmann::json& j) {
    LaurentPoly f;
    try {
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 2) throw PreconditionError("Laurent term must be [exp, \"coeff\"]");
            mpz_class c;
            if (c.set_str(t[1].get<std::string>(), 10) != 0) throw PreconditionError("bad Laurent coefficient");
            f.add_term(t[0].get<std::int64_t>(), c);
        }
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("Laurent JSON: ") + e.what());
    }
    return f;
}

}  // namespace qinv
