#include "padic/serialize.hpp"

#include <stdexcept>

namespace padic {

using nlohmann::json;

json value_to_json(const CyclotomicValue& v) {
    json terms = json::array();
    for (const auto& [e, c] : v.terms())
        terms.push_back(json::array({e, c.get_str()}));
    return json{{"p", v.prime()},
                {"order_exp", v.order_exp()},
                {"scale_exp", v.scale_exp()},
                {"terms", std::move(terms)}};
}

CyclotomicValue value_from_json(const json& j) {
    PrimeContext ctx(j.at("p").get<long>());
    long order_exp = j.at("order_exp").get<long>();
    long scale_exp = j.at("scale_exp").get<long>();
    if (order_exp < 0)
        throw std::invalid_argument("order_exp must be nonnegative");
    long pm = pow_long_checked(ctx.p(), order_exp);
    CyclotomicSum sum(ctx);
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 2)
            throw std::invalid_argument("each term must be [exponent, coefficient]");
        long e = t[0].get<long>();
        if (e < 0 || e >= pm)
            throw std::invalid_argument("term exponent out of range");
        sum.add_term(order_exp, e, mpz_class(t[1].get<std::string>()));
    }
    return sum.finish(scale_exp); // re-canonicalizes, so any input normalizes
}

json stats_to_json(const EvalStats& s) {
    return json{{"char_evals", s.char_evals},     {"max_depth", s.max_depth},
                {"constant_rules", s.constant_rules}, {"vanish_rules", s.vanish_rules},
                {"rescale_rules", s.rescale_rules},   {"split_rules", s.split_rules}};
}

json bound_to_json(const SymbolicBound& b, long precision_bits) {
    json j{{"symbolic", b.str()}};
    if (b.infinite)
        return j;
    j["factor"] = b.factor;
    j["prime"] = b.prime;
    j["exponent"] = b.exponent.get_str();
    Enclosure e = eval_bound(b, precision_bits);
    j["lo"] = magnitude_str(e.lo);
    j["hi"] = magnitude_str(e.hi);
    return j;
}

json bound_report_to_json(const BoundReport& r, long precision_bits) {
    json j;
    if (r.degree)
        j["degree"] = *r.degree;
    if (r.profile.m) {
        j["m"] = *r.profile.m;
        j["r"] = *r.profile.r;
    }
    if (r.profile.lambda_exp)
        j["lambda_exp"] = *r.profile.lambda_exp;
    j["main"] = bound_to_json(r.main, precision_bits);
    j["uniform"] = bound_to_json(r.uniform, precision_bits);
    j["ball"] = bound_to_json(r.ball, precision_bits);
    return j;
}

json verdict_to_json(const Verdict& v) {
    json j{{"status", to_string(v.status)},
           {"bound", v.symbolic.str()},
           {"magnitude_lo", magnitude_str(v.magnitude.lo)},
           {"magnitude_hi", magnitude_str(v.magnitude.hi)},
           {"precision_bits", v.precision_bits}};
    if (v.bound) {
        j["bound_lo"] = magnitude_str(v.bound->lo);
        j["bound_hi"] = magnitude_str(v.bound->hi);
    }
    return j;
}

std::string magnitude_str(const BigFloat& x) { return x.str(30); }

} // namespace padic
