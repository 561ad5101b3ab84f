#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "z2lp/step_function.hpp"

namespace z2lp {

/// Thrown for malformed function files and other bad external input.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Function file: {"level": J, "samples": [s_0, ..., s_{2^J-1}]}, samples in coset-index order.
inline nlohmann::json to_json(const StepFunction& f) {
  nlohmann::json j;
  j["level"] = f.level();
  j["samples"] = std::vector<double>(f.samples().begin(), f.samples().end());
  return j;
}

inline StepFunction function_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("function file: top-level value must be an object");
  if (!j.contains("level") || !j["level"].is_number_integer())
    throw FormatError("function file: integer field \"level\" is required");
  if (!j.contains("samples") || !j["samples"].is_array())
    throw FormatError("function file: array field \"samples\" is required");
  const auto level = j["level"].get<long long>();
  if (level < 0 || level > kMaxFunctionLevel) throw FormatError("function file: level out of range");
  const auto& arr = j["samples"];
  if (arr.size() != (std::size_t{1} << level)) throw FormatError("function file: samples length must be 2^level");
  std::vector<double> samples;
  samples.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw FormatError("function file: samples must be numbers");
    samples.push_back(v.get<double>());
  }
  try {
    return {static_cast<int>(level), std::move(samples)};
  } catch (const std::exception& e) {
    throw FormatError(std::string("function file: ") + e.what());
  }
}

inline StepFunction parse_function(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("function file: invalid JSON: ") + e.what());
  }
  return function_from_json(j);
}

inline std::string serialize_function(const StepFunction& f) { return to_json(f).dump() + "\n"; }

inline StepFunction load_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open function file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_function(ss.str());
}

inline void save_function(const StepFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write function file: " + path);
  out << serialize_function(f);
}

}  // namespace z2lp
