#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "z2lp/counterexample.hpp"
#include "z2lp/harness.hpp"
#include "z2lp/norms.hpp"

namespace z2lp {

inline constexpr const char* kSweepCsvHeader = "m,alpha,beta,j0,j1,level,l2_squared,besov_pos,besov_neg,bv,ratio";

namespace detail {

// JSON has no infinity; exponents use the string "inf".
inline nlohmann::json exponent_json(double e) {
  if (std::isinf(e)) return "inf";
  return e;
}

inline nlohmann::json optional_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace detail

inline nlohmann::json to_json(const NormSpec& s) {
  return {{"family", std::string(to_string(s.family))},
          {"s", s.s},
          {"p", detail::exponent_json(s.p)},
          {"q", detail::exponent_json(s.q)},
          {"homogeneous", s.homogeneous}};
}

inline nlohmann::json to_json(const NormValue& v) {
  return {{"spec", to_json(v.spec)}, {"value", v.value}, {"level", v.level}};
}

// Report JSON: {spec, lhs, rhs, ratio, status, details}.
inline nlohmann::json to_json(const InequalityReport& r) {
  nlohmann::json details = nlohmann::json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  details["function"] = r.function;
  if (r.bound) details["bound"] = *r.bound;
  if (!r.notes.empty()) details["notes"] = r.notes;
  return {{"spec", r.spec},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"ratio", detail::optional_json(r.ratio)},
          {"status", std::string(to_string(r.status))},
          {"details", details}};
}

inline nlohmann::json to_json(const CounterexampleParams& p) {
  return {{"alpha", p.alpha}, {"beta", p.beta}, {"j0", p.j0}, {"j1", p.j1}};
}

inline nlohmann::json to_json(const CounterexampleNorms& n) {
  return {{"l2_squared", n.l2_squared}, {"besov_pos", n.besov_pos}, {"besov_neg", n.besov_neg}};
}

inline nlohmann::json to_json(const CounterexampleReport& r) {
  const bool ok = r.consistent();
  nlohmann::json j = {{"spec", "counterexample"},
                      {"params", to_json(r.params)},
                      {"level", r.level},
                      {"profile", r.profile},
                      {"computed", to_json(r.computed)},
                      {"predicted", to_json(r.predicted)},
                      {"bv", r.bv},
                      {"l2_squared", r.computed.l2_squared},
                      {"lhs", r.computed.l2_squared},
                      {"rhs", r.bv * r.computed.besov_neg},
                      {"ratio", r.ratio},
                      {"exact_arithmetic", r.exact_arithmetic},
                      {"status", ok ? "pass" : "fail"}};
  nlohmann::json details = nlohmann::json::object();
  if (r.exact_match) details["exact_match"] = *r.exact_match;
  details["bv_lower_bound"] = 2.0 * r.computed.besov_pos;
  details["bv_upper_bound"] = 4.0 * r.computed.besov_pos;
  if (!ok) details["violated"] = "computed norms differ from the closed-form predictions";
  j["details"] = details;
  return j;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    os << r.m << ',' << detail::fmt_num(r.params.alpha) << ',' << detail::fmt_num(r.params.beta) << ','
       << r.params.j0 << ',' << r.params.j1 << ',' << r.level << ',' << detail::fmt_num(r.l2_squared) << ','
       << detail::fmt_num(r.besov_pos) << ',' << detail::fmt_num(r.besov_neg) << ',' << detail::fmt_num(r.bv)
       << ',' << detail::fmt_num(r.ratio) << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const SweepRow& r) {
  return {{"m", r.m},         {"alpha", r.params.alpha},   {"beta", r.params.beta},
          {"j0", r.params.j0}, {"j1", r.params.j1},         {"level", r.level},
          {"l2_squared", r.l2_squared}, {"besov_pos", r.besov_pos}, {"besov_neg", r.besov_neg},
          {"bv", r.bv},       {"ratio", r.ratio}};
}

}  // namespace z2lp
