#pragma once

#include <json.hpp>

#include "padic/bounds.hpp"

namespace padic {

// {p, order_exp, scale_exp, terms: [[exponent, coefficient-decimal-string], ...]}
nlohmann::json value_to_json(const CyclotomicValue& v);
CyclotomicValue value_from_json(const nlohmann::json& j);

nlohmann::json stats_to_json(const EvalStats& s);
nlohmann::json bound_to_json(const SymbolicBound& b, long precision_bits);
nlohmann::json bound_report_to_json(const BoundReport& r, long precision_bits);
nlohmann::json verdict_to_json(const Verdict& v);

// 30 significant digits, the CSV/JSON display precision
std::string magnitude_str(const BigFloat& x);

} // namespace padic
