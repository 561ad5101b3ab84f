// z2lp: command-line front end for the 2-adic Littlewood-Paley toolkit.
//
// Exit codes: 0 success, 1 a checked invariant or contract was violated,
// 2 malformed input or flags.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "z2lp/z2lp.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitBadInput = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_exponent(const std::string& text, const char* flag) {
  if (text == "inf" || text == "infinity") return z2lp::kInfinity;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid value for ") + flag + ": " + text);
  }
}

z2lp::BvMode parse_mode(const std::string& m) {
  if (m == "exact") return z2lp::BvMode::exact;
  if (m == "dyadic") return z2lp::BvMode::dyadic;
  throw UsageError("--mode must be exact or dyadic");
}

z2lp::CorpusModel parse_model(const std::string& m) {
  if (auto v = z2lp::parse_corpus_model(m)) return *v;
  throw UsageError("--model must be uniform_samples, random_blocks or sparse_blocks");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw z2lp::FormatError("cannot write output file: " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s + "\n";
}

std::string num(double v) { return z2lp::detail::fmt_num(v); }

std::string report_csv(const z2lp::InequalityReport& r) {
  return csv_line({"spec", "lhs", "rhs", "ratio", "status"}) +
         csv_line({"\"" + r.spec + "\"", num(r.lhs), num(r.rhs), r.ratio ? num(*r.ratio) : "",
                   std::string(z2lp::to_string(r.status))});
}

int status_exit(z2lp::ReportStatus s) { return s == z2lp::ReportStatus::fail ? kExitViolation : kExitOk; }

struct Common {
  std::string output;
  std::string format = "json";
  std::string mode = "exact";
  bool exact_arith = false;
  int cap = z2lp::kDefaultExhaustiveLevelCap;
};

// --- norm -----------------------------------------------------------------

struct NormArgs {
  std::string input;
  std::string family;
  double s = 0.0;
  std::string p = "2";
  std::string q = "inf";
  bool homogeneous = false;
};

int run_norm(const NormArgs& a, const Common& c) {
  const auto family = z2lp::parse_norm_family(a.family);
  if (!family) throw UsageError("--family must be lebesgue, sobolev, besov, bv or second_difference");
  z2lp::NormSpec spec{*family, a.s, parse_exponent(a.p, "--p"), parse_exponent(a.q, "--q"), a.homogeneous};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto f = z2lp::load_function(a.input);
  const auto v = z2lp::evaluate_norm(f, spec, parse_mode(c.mode), c.cap);

  json j = z2lp::to_json(v);
  if (c.exact_arith) {
    const auto ef = z2lp::to_exact(f);
    std::optional<z2lp::Dyadic> exact;
    switch (spec.family) {
      case z2lp::NormFamily::lebesgue:
        if (spec.p == 1.0) exact = z2lp::l1_norm(ef);
        if (std::isinf(spec.p)) exact = z2lp::linf_norm(ef);
        if (spec.p == 2.0) j["exact_squared"] = z2lp::l2_norm_squared(ef).to_string();
        break;
      case z2lp::NormFamily::besov:
        if (spec.homogeneous && std::isinf(spec.q) && spec.s == std::floor(spec.s) &&
            (spec.p == 1.0 || std::isinf(spec.p)))
          exact = z2lp::besov_sup_norm(ef, static_cast<int>(spec.s), spec.p);
        break;
      case z2lp::NormFamily::bv: exact = z2lp::bv_scan(ef, parse_mode(c.mode), c.cap).value; break;
      case z2lp::NormFamily::second_difference: exact = z2lp::second_difference_scan(ef, c.cap).value; break;
      case z2lp::NormFamily::sobolev: break;
    }
    if (exact) j["exact"] = exact->to_string();
    if (!exact && !j.contains("exact_squared"))
      throw UsageError("--exact-arith supports lebesgue p in {1,2,inf}, homogeneous besov with integer s, "
                       "p in {1,inf}, q = inf, bv and second_difference");
  }

  if (c.format == "csv") {
    emit(csv_line({"family", "s", "p", "q", "homogeneous", "level", "value"}) +
             csv_line({a.family, num(spec.s), a.p, a.q, spec.homogeneous ? "true" : "false",
                       std::to_string(v.level), num(v.value)}),
         c.output);
  } else {
    emit(dump(j), c.output);
  }
  return kExitOk;
}

// --- decompose ------------------------------------------------------------

int run_decompose(const std::string& input, const Common& c) {
  const auto f = z2lp::load_function(input);
  const auto d = z2lp::decompose(f);
  const auto back = z2lp::reconstruct(d);
  double err = 0.0;
  for (std::uint64_t k = 0; k < f.size(); ++k) err = std::max(err, std::abs(back[k] - f[k]));
  const double tol = 1e-12 * std::max(1.0, z2lp::linf_norm(f));
  const bool ok = err <= tol;

  if (!c.output.empty()) {
    namespace fs = std::filesystem;
    const fs::path dir(c.output);
    fs::create_directories(dir);
    z2lp::save_function(z2lp::StepFunction::constant(0, d.mean), (dir / "mean.json").string());
    json files = json::array();
    for (std::size_t j = 0; j < d.blocks.size(); ++j) {
      char name[32];
      std::snprintf(name, sizeof name, "block_%02zu.json", j);
      z2lp::save_function(d.blocks[j], (dir / name).string());
      files.push_back(name);
    }
    std::cout << dump({{"level", d.level},
                       {"mean", d.mean},
                       {"blocks", files},
                       {"reconstruction_error", err},
                       {"status", ok ? "pass" : "fail"}});
  } else {
    json blocks = json::array();
    for (const auto& b : d.blocks) blocks.push_back(z2lp::to_json(b));
    std::cout << dump({{"level", d.level},
                       {"mean", d.mean},
                       {"blocks", blocks},
                       {"reconstruction_error", err},
                       {"status", ok ? "pass" : "fail"}});
  }
  return ok ? kExitOk : kExitViolation;
}

// --- counterexample / sweep -------------------------------------------------

z2lp::NormReportOptions report_options(const Common& c) {
  return {parse_mode(c.mode), c.cap, c.exact_arith};
}

int run_counterexample(const z2lp::CounterexampleParams& p, const Common& c) {
  z2lp::CounterexampleReport r;
  try {
    r = z2lp::norm_report(p, report_options(c));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  emit(dump(z2lp::to_json(r)), c.output);
  return r.consistent() ? kExitOk : kExitViolation;
}

int run_sweep(int m_min, int m_max, const Common& c) {
  std::vector<z2lp::SweepRow> rows;
  try {
    rows = z2lp::blowup_sweep(m_min, m_max, report_options(c));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bool increasing = true;
  for (std::size_t i = 1; i < rows.size(); ++i) increasing = increasing && rows[i].ratio > rows[i - 1].ratio;
  if (c.format == "json") {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(z2lp::to_json(r));
    json j = {{"spec", "blowup-sweep"}, {"rows", arr}, {"status", increasing ? "pass" : "fail"}};
    if (!increasing) j["details"] = {{"violated", "ratio is not strictly increasing in m"}};
    emit(dump(j), c.output);
  } else {
    emit(z2lp::sweep_csv(rows), c.output);
    if (!increasing) std::cerr << "violated: ratio is not strictly increasing in m\n";
  }
  return increasing ? kExitOk : kExitViolation;
}

// --- check-interp ---------------------------------------------------------

struct InterpArgs {
  std::string input;
  double s1 = 1.0;
  double beta = 1.0;
  double theta = 0.5;
  std::string r = "2";
  std::string r1 = "2";
  std::string r2 = "inf";
  int count = 10000;
  std::uint64_t seed = 1;
  int length = 32;
};

int run_check_interp(const InterpArgs& a, const Common& c) {
  z2lp::InterpolationSpec spec{a.s1, a.beta, a.theta, parse_exponent(a.r, "--r"), parse_exponent(a.r1, "--r1"),
                               parse_exponent(a.r2, "--r2")};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw z2lp::FormatError("cannot open sequence file: " + a.input);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw z2lp::FormatError(std::string("sequence file: invalid JSON: ") + e.what());
    }
    if (!j.is_array()) throw z2lp::FormatError("sequence file: expected a JSON array of numbers");
    std::vector<double> seq;
    for (const auto& v : j) {
      if (!v.is_number()) throw z2lp::FormatError("sequence file: entries must be numbers");
      seq.push_back(v.get<double>());
    }
    const auto r = z2lp::sequence_interpolation_check(seq, spec);
    emit(c.format == "csv" ? report_csv(r) : dump(z2lp::to_json(r)), c.output);
    return status_exit(r.status);
  }

  if (a.count < 1 || a.length < 1) throw UsageError("--count and --length must be >= 1");
  const auto check = z2lp::interpolation_corpus_check(z2lp::random_sequences(a.count, a.seed, a.length), spec);
  z2lp::InequalityReport r;
  r.spec = "sequence-interpolation " + spec.describe();
  r.function = "random sequences";
  r.ratio = check.max_ratio;
  r.bound = check.bound;
  r.status = check.violations == 0 ? z2lp::ReportStatus::pass : z2lp::ReportStatus::fail;
  r.details = {{"count", check.count},
               {"vacuous", check.vacuous},
               {"violations", check.violations},
               {"max_ratio", check.max_ratio},
               {"seed", static_cast<double>(a.seed)}};
  if (check.violations) r.notes.emplace_back("violated: lhs > C rhs for some sequence");
  json j = z2lp::to_json(r);
  j["lhs"] = nullptr;
  j["rhs"] = nullptr;
  emit(c.format == "csv" ? report_csv(r) : dump(j), c.output);
  return status_exit(r.status);
}

// --- check-sobolev ----------------------------------------------------------

struct SobolevArgs {
  std::string input;
  std::vector<int> levels{6, 8, 10};
  int count = 1000;
  std::uint64_t seed = 1;
  std::string model = "uniform_samples";
  double p = 4.0 / 3.0;
  double q = 2.0;
  double s1 = 1.0;
  double beta = 1.0;
  double max_growth = 0.25;
};

int run_check_sobolev(const SobolevArgs& a, const Common& c) {
  try {
    if (!a.input.empty()) {
      const auto r = z2lp::improved_sobolev_report(z2lp::load_function(a.input), a.p, a.q, a.s1, a.beta);
      emit(c.format == "csv" ? report_csv(r) : dump(z2lp::to_json(r)), c.output);
      return status_exit(r.status);
    }
    if (a.count < 1) throw UsageError("--count must be >= 1");
    const auto st = z2lp::sobolev_corpus_stability(a.levels, a.count, a.seed, parse_model(a.model), a.p, a.q, a.s1,
                                                   a.beta);
    const bool ok = st.stable(a.max_growth);
    json per_level = json::array();
    for (const auto& l : st.levels)
      per_level.push_back({{"level", l.level}, {"max_ratio", l.max_ratio}, {"vacuous", l.vacuous}});
    json j = {{"spec", "improved-sobolev corpus p=" + num(a.p) + " q=" + num(a.q) + " s1=" + num(a.s1) +
                           " beta=" + num(a.beta) + " model=" + a.model},
              {"lhs", st.levels.back().max_ratio},
              {"rhs", st.levels.front().max_ratio * (1.0 + a.max_growth)},
              {"ratio", st.growth},
              {"status", ok ? "pass" : "fail"},
              {"details", {{"levels", per_level}, {"growth", st.growth}, {"max_growth", a.max_growth},
                           {"count", a.count}, {"seed", a.seed}}}};
    if (!ok) j["details"]["violated"] = "corpus max ratio grows with resolution beyond the allowed margin";
    if (c.format == "csv") {
      std::string out = csv_line({"level", "max_ratio", "vacuous"});
      for (const auto& l : st.levels) out += csv_line({std::to_string(l.level), num(l.max_ratio), std::to_string(l.vacuous)});
      emit(out, c.output);
    } else {
      emit(dump(j), c.output);
    }
    return ok ? kExitOk : kExitViolation;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// --- check-bv ---------------------------------------------------------------

struct BvArgs {
  std::string input;
  int level = 8;
  int count = 500;
  std::uint64_t seed = 1;
  std::string model = "uniform_samples";
};

int run_check_bv(const BvArgs& a, const Common& c) {
  try {
    if (!a.input.empty()) {
      const auto f = z2lp::load_function(a.input);
      const auto cmp = z2lp::bv_besov_comparison(f, c.cap);
      auto ineq = z2lp::bv_inequality_report(f, c.cap);
      const bool in_band = !cmp.ratio || (*cmp.ratio >= 2.0 * (1 - 1e-12) && *cmp.ratio <= 4.0 * (1 + 1e-12));
      json j = {{"spec", "bv-besov-comparison"},
                {"lhs", cmp.bv},
                {"rhs", cmp.besov},
                {"ratio", cmp.ratio ? json(*cmp.ratio) : json(nullptr)},
                {"status", !cmp.ratio ? "vacuous" : (in_band ? "pass" : "fail")},
                {"details", {{"bv", cmp.bv}, {"besov", cmp.besov}, {"bv_inequality", z2lp::to_json(ineq)}}}};
      if (!in_band) j["details"]["violated"] = "bv / besov ratio outside [2, 4]";
      emit(dump(j), c.output);
      return in_band ? kExitOk : kExitViolation;
    }
    if (a.count < 1) throw UsageError("--count must be >= 1");
    const auto corpus = z2lp::random_corpus(a.level, a.count, a.seed, parse_model(a.model));
    const auto chk = z2lp::bv_corpus_check(corpus, 1e-12, c.cap);
    const bool ok = chk.violations == 0;
    json j = {{"spec", "bv-besov-comparison corpus model=" + a.model},
              {"lhs", chk.min_ratio},
              {"rhs", chk.max_ratio},
              {"ratio", nullptr},
              {"status", ok ? "pass" : "fail"},
              {"details", {{"level", chk.level}, {"count", chk.count}, {"constant", chk.constant},
                           {"min_ratio", chk.min_ratio}, {"max_ratio", chk.max_ratio},
                           {"violations", chk.violations}, {"seed", a.seed}}}};
    if (!ok) j["details"]["violated"] = "bv / besov ratio outside [2, 4]";
    if (c.format == "csv")
      emit(csv_line({"level", "count", "min_ratio", "max_ratio", "violations"}) +
               csv_line({std::to_string(chk.level), std::to_string(chk.count), num(chk.min_ratio),
                         num(chk.max_ratio), std::to_string(chk.violations)}),
           c.output);
    else
      emit(dump(j), c.output);
    return ok ? kExitOk : kExitViolation;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void add_common(CLI::App* sub, Common& c, bool with_mode) {
  sub->add_option("--output", c.output, "Write the result to this path instead of stdout");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  if (with_mode) {
    sub->add_option("--mode", c.mode, "BV shift scan: exact (all shifts) or dyadic (powers of two)")
        ->check(CLI::IsMember({"exact", "dyadic"}));
    sub->add_flag("--exact-arith", c.exact_arith, "Evaluate in exact dyadic-rational arithmetic where possible");
    sub->add_option("--cap", c.cap, "Resolution cap for exhaustive shift scans");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley analysis, norms and counterexamples on the 2-adic integers"};
  app.require_subcommand(1);

  Common common;

  NormArgs norm;
  auto* norm_cmd = app.add_subcommand("norm", "Compute a norm of a function file");
  norm_cmd->add_option("--input", norm.input, "Function file (JSON {level, samples})")->required();
  norm_cmd->add_option("--family", norm.family, "lebesgue | sobolev | besov | bv | second_difference")->required();
  norm_cmd->add_option("--s", norm.s, "Smoothness");
  norm_cmd->add_option("--p", norm.p, "Integrability exponent (number or inf)");
  norm_cmd->add_option("--q", norm.q, "Summation exponent (number or inf)");
  norm_cmd->add_flag("--homogeneous", norm.homogeneous, "Drop the S_0 term");
  add_common(norm_cmd, common, true);

  std::string decompose_input;
  auto* dec_cmd = app.add_subcommand("decompose", "Emit the Littlewood-Paley decomposition of a function file");
  dec_cmd->add_option("--input", decompose_input, "Function file")->required();
  dec_cmd->add_option("--output", common.output, "Directory for mean.json and block_NN.json");

  z2lp::CounterexampleParams cx;
  auto* cx_cmd = app.add_subcommand("counterexample", "Build the block-prescribed function and report its norms");
  cx_cmd->add_option("--alpha", cx.alpha)->required();
  cx_cmd->add_option("--beta", cx.beta)->required();
  cx_cmd->add_option("--j0", cx.j0)->required();
  cx_cmd->add_option("--j1", cx.j1)->required();
  add_common(cx_cmd, common, true);

  int m_min = 1;
  int m_max = 4;
  auto* sweep_cmd = app.add_subcommand("sweep", "Blow-up sweep over (1, 4^m, m, 2m)");
  sweep_cmd->add_option("--m-min", m_min);
  sweep_cmd->add_option("--m-max", m_max);
  add_common(sweep_cmd, common, true);

  InterpArgs interp;
  auto* interp_cmd = app.add_subcommand("check-interp", "Check the weighted sequence interpolation inequality");
  interp_cmd->add_option("--input", interp.input, "JSON array of sequence entries");
  interp_cmd->add_option("--s1", interp.s1);
  interp_cmd->add_option("--beta", interp.beta);
  interp_cmd->add_option("--theta", interp.theta);
  interp_cmd->add_option("--r", interp.r);
  interp_cmd->add_option("--r1", interp.r1);
  interp_cmd->add_option("--r2", interp.r2);
  interp_cmd->add_option("--count", interp.count);
  interp_cmd->add_option("--seed", interp.seed);
  interp_cmd->add_option("--length", interp.length, "Maximum random sequence length");
  add_common(interp_cmd, common, false);

  SobolevArgs sob;
  auto* sob_cmd = app.add_subcommand("check-sobolev", "Improved Sobolev inequality corpus report");
  sob_cmd->add_option("--input", sob.input, "Single function file instead of a corpus");
  sob_cmd->add_option("-J,--level", sob.levels, "Corpus levels (repeatable); first and last are compared");
  sob_cmd->add_option("--count", sob.count);
  sob_cmd->add_option("--seed", sob.seed);
  sob_cmd->add_option("--model", sob.model);
  sob_cmd->add_option("--p", sob.p);
  sob_cmd->add_option("--q", sob.q);
  sob_cmd->add_option("--s1", sob.s1);
  sob_cmd->add_option("--beta", sob.beta);
  sob_cmd->add_option("--max-growth", sob.max_growth);
  add_common(sob_cmd, common, false);

  BvArgs bv;
  auto* bv_cmd = app.add_subcommand("check-bv", "BV against B^{1,inf}_1 on a corpus or a function file");
  bv_cmd->add_option("--input", bv.input, "Single function file instead of a corpus");
  bv_cmd->add_option("-J,--level", bv.level);
  bv_cmd->add_option("--count", bv.count);
  bv_cmd->add_option("--seed", bv.seed);
  bv_cmd->add_option("--model", bv.model);
  add_common(bv_cmd, common, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*norm_cmd) return run_norm(norm, common);
    if (*dec_cmd) return run_decompose(decompose_input, common);
    if (*cx_cmd) return run_counterexample(cx, common);
    if (*sweep_cmd) {
      if (sweep_cmd->count("--format") == 0) common.format = "csv";
      return run_sweep(m_min, m_max, common);
    }
    if (*interp_cmd) return run_check_interp(interp, common);
    if (*sob_cmd) return run_check_sobolev(sob, common);
    if (*bv_cmd) return run_check_bv(bv, common);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const z2lp::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
