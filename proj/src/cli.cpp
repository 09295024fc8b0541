/*
 * Copyright 2026 The binscore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "binscore/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "binscore/asymptotics.hpp"
#include "binscore/evaluation.hpp"
#include "binscore/intervals.hpp"
#include "binscore/oracle.hpp"
#include "binscore/parallel.hpp"
#include "binscore/summaries.hpp"

namespace binscore::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string full(double v) { return fmt("%.17g", v); }
std::string sig12(double v) { return fmt("%.12g", v); }

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return parts;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid number for ") + what + ": '" + s + "'");
  }
}

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid integer for ") + what + ": '" + s + "'");
  }
}

std::vector<MethodId> parse_methods(const std::string& list) {
  if (list.empty() || list == "all") {
    return {kAllMethods.begin(), kAllMethods.end()};
  }
  std::vector<MethodId> out;
  for (const std::string& name : split(list, ',')) {
    const auto id = parse_method(name);
    if (!id) {
      throw UsageError("unknown method '" + name +
                       "'; valid names: " + valid_method_names());
    }
    if (std::find(out.begin(), out.end(), *id) != out.end()) {
      throw UsageError("method '" + name + "' listed twice");
    }
    out.push_back(*id);
  }
  return out;
}

void check_n(int n) {
  if (n < 1) throw UsageError("n must be >= 1");
}

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw UsageError("gamma must be in (0, 1)");
}

QuadratureSpec make_quad(double rel_tol, double abs_tol) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw UsageError("quadrature tolerances must be positive");
  }
  QuadratureSpec q;
  q.rel_tol = rel_tol;
  q.abs_tol = abs_tol;
  return q;
}

// key=value lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> load_config(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    auto key = line.substr(0, eq);
    auto value = line.substr(eq + 1);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t\r") + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t\r") + 1);
    if (key.empty()) {
      throw UsageError(path + ":" + std::to_string(lineno) + ": empty key");
    }
    entries.emplace_back(key, value);
  }
  return entries;
}

// Removes --config from the arguments and appends every config entry whose
// flag was not given explicitly, so that flags win over the file.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;
  for (const auto& [key, value] : load_config(path)) {
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const auto& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!given) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
  return args;
}

// Writes to --out when set, else to the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

struct Options {
  std::string methods = "all";
  int x = -1;
  int n = 0;
  std::string n_list;
  std::string n_range;
  double gamma = 0.95;
  std::string levels;
  std::string weights;
  std::string scale = "both";
  int grid = 1999;
  double epsilon = kDefaultSmoothingEpsilon;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  std::string out;
  std::uint64_t seed = VerifyOptions{}.seed;
  std::int64_t replications = VerifyOptions{}.replications;
  int configs = VerifyOptions{}.mc_configs;
  double tolerance_scale = 1.0;
  unsigned workers = default_workers();
};

int cmd_interval(const Options& opt, std::ostream& out) {
  check_n(opt.n);
  check_gamma(opt.gamma);
  if (opt.x < 0 || opt.x > opt.n) throw UsageError("x must be in [0, n]");
  const BinomialSetting setting(opt.n, opt.gamma);
  const std::vector<MethodId> methods = parse_methods(opt.methods);
  Sink sink(opt.out, out);
  std::ostream& os = sink.get();
  os << "method,x,n,gamma,lower,upper,raw_lower,raw_upper,"
        "lower_pct,upper_pct,raw_lower_pct,raw_upper_pct\n";
  for (MethodId m : methods) {
    const IntervalEstimate ci = compute_interval(m, opt.x, setting);
    os << method_name(m) << ',' << opt.x << ',' << opt.n << ','
       << sig12(opt.gamma) << ',' << full(ci.lower) << ',' << full(ci.upper)
       << ',' << full(ci.raw_lower) << ',' << full(ci.raw_upper) << ','
       << percent_display(ci.lower) << ',' << percent_display(ci.upper) << ','
       << percent_display(ci.raw_lower) << ','
       << percent_display(ci.raw_upper) << '\n';
  }
  return kExitOk;
}

int cmd_evaluate(const Options& opt, std::ostream& out, std::ostream& err) {
  check_n(opt.n);
  check_gamma(opt.gamma);
  if (opt.grid < 3) throw UsageError("grid must be >= 3");
  if (!(opt.epsilon > 0.0)) throw UsageError("epsilon must be > 0");
  const QuadratureSpec quad = make_quad(opt.rel_tol, opt.abs_tol);
  std::vector<MethodId> methods = parse_methods(opt.methods);
  std::sort(methods.begin(), methods.end(), [](MethodId a, MethodId b) {
    return method_name(a) < method_name(b);
  });
  const BinomialSetting setting(opt.n, opt.gamma);
  std::vector<MethodEvaluator> evaluators;
  for (MethodId m : methods) evaluators.emplace_back(m, setting);

  const auto grid = static_cast<std::size_t>(opt.grid);
  std::vector<std::string> rows(methods.size() * grid);
  std::vector<std::string> warnings(rows.size());
  parallel_for(rows.size(), opt.workers, [&](std::size_t i) {
    const MethodEvaluator& ev = evaluators[i / grid];
    const double pi =
        static_cast<double>(i % grid + 1) / static_cast<double>(grid + 1);
    const EvaluationPoint pt = ev.evaluate(pi);
    const IntegrationResult smooth = ev.smoothed_cp_detail(pi, opt.epsilon, quad);
    if (!smooth.converged) {
      warnings[i] = std::string(method_name(ev.method())) + " pi=" +
                    sig12(pi) + ": " + smooth.warning;
    }
    const double reference = asym_eis(pi, opt.n, opt.gamma);
    rows[i] = std::string(method_name(ev.method())) + ',' + sig12(pi) + ',' +
              sig12(pt.cp) + ',' + sig12(smooth.value) + ',' + sig12(pt.ew) +
              ',' + sig12(pt.eis) + ',' + sig12(reference) + ',' +
              sig12(pt.eis - reference) + '\n';
  });

  Sink sink(opt.out, out);
  std::ostream& os = sink.get();
  os << "method,pi,cp,smoothed_cp,ew,eis,asym_eis,eis_deficit\n";
  for (const auto& r : rows) os << r;
  int status = kExitOk;
  for (const auto& w : warnings) {
    if (w.empty()) continue;
    err << "warning: " << w << '\n';
    status = kExitNumericalWarning;
  }
  return status;
}

std::vector<int> rank_ns(const Options& opt) {
  std::vector<int> ns;
  if (!opt.n_list.empty()) {
    for (const auto& s : split(opt.n_list, ',')) ns.push_back(to_int(s, "--n"));
  }
  if (!opt.n_range.empty()) {
    const auto parts = split(opt.n_range, ':');
    if (parts.size() != 3) throw UsageError("--n-range expects start:stop:step");
    const int start = to_int(parts[0], "--n-range");
    const int stop = to_int(parts[1], "--n-range");
    const int step = to_int(parts[2], "--n-range");
    if (step < 1 || stop < start) throw UsageError("invalid --n-range");
    for (int n = start; n <= stop; n += step) ns.push_back(n);
  }
  if (ns.empty()) {
    for (int n = 10; n <= 100; n += 5) ns.push_back(n);
  }
  for (int n : ns) check_n(n);
  return ns;
}

LevelWeights rank_levels(const Options& opt) {
  if (opt.levels.empty()) {
    if (!opt.weights.empty()) throw UsageError("--weights requires --levels");
    check_gamma(opt.gamma);
    return LevelWeights::single(opt.gamma);
  }
  const auto level_text = split(opt.levels, ',');
  std::vector<std::string> weight_text =
      opt.weights.empty() ? std::vector<std::string>(level_text.size(), "1")
                          : split(opt.weights, ',');
  if (weight_text.size() != level_text.size()) {
    throw UsageError("--levels and --weights must have the same length");
  }
  std::vector<LevelWeights::Level> levels;
  for (std::size_t i = 0; i < level_text.size(); ++i) {
    const double g = to_double(level_text[i], "--levels");
    check_gamma(g);
    levels.push_back({Probability(g), to_double(weight_text[i], "--weights")});
  }
  try {
    return LevelWeights(std::move(levels));
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

int cmd_rank(const Options& opt, std::ostream& out, std::ostream& err) {
  const std::vector<MethodId> methods = parse_methods(opt.methods);
  const std::vector<int> ns = rank_ns(opt);
  const LevelWeights levels = rank_levels(opt);
  std::vector<Scale> scales;
  if (opt.scale == "both") {
    scales.assign(kAllScales.begin(), kAllScales.end());
  } else if (const auto s = parse_scale(opt.scale)) {
    scales.push_back(*s);
  } else {
    throw UsageError("--scale must be uniform, varstab or both");
  }
  const QuadratureSpec quad = make_quad(opt.rel_tol, opt.abs_tol);
  const std::vector<SummaryRow> rows =
      summarize_grid(methods, ns, levels, quad, opt.workers);

  Sink sink(opt.out, out);
  std::ostream& os = sink.get();
  os << "method,n,scale,levels,value,rank\n";
  const std::string label = levels_label(levels);
  std::vector<std::string> warnings;
  for (int n : ns) {
    for (Scale scale : scales) {
      const RankingTable table = rank_rows(rows, n, scale);
      for (const RankEntry& e : table.entries) {
        os << method_name(e.method) << ',' << n << ',' << scale_name(scale)
           << ',' << label << ',' << sig12(e.value) << ',' << e.rank << '\n';
        if (e.tie) {
          err << "note: tie broken by name for " << method_name(e.method)
              << " n=" << n << " " << scale_name(scale) << '\n';
        }
      }
      if (scale == scales.front()) {
        warnings.insert(warnings.end(), table.warnings.begin(),
                        table.warnings.end());
      }
    }
  }
  for (const auto& w : warnings) err << "warning: " << w << '\n';
  return warnings.empty() ? kExitOk : kExitNumericalWarning;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  if (opt.replications < 1) throw UsageError("replications must be >= 1");
  if (opt.configs < 0) throw UsageError("configs must be >= 0");
  if (!(opt.tolerance_scale >= 0.0)) {
    throw UsageError("tolerance-scale must be >= 0");
  }
  VerifyOptions vo;
  vo.seed = opt.seed;
  vo.replications = opt.replications;
  vo.mc_configs = opt.configs;
  vo.tolerance_scale = opt.tolerance_scale;
  vo.workers = opt.workers;
  const VerifyReport report = run_verification(vo);
  Sink sink(opt.out, out);
  sink.get() << report.format();
  return report.all_passed() ? kExitOk : kExitFailure;
}

struct PublishedInterval {
  const char* quantity;
  MethodId method;
  int x;
  int n;
  double lower_pct;
  double upper_pct;
};

// 95% intervals for self-test sensitivity (29/39) and specificity (246/248).
constexpr PublishedInterval kPublished[] = {
    {"sensitivity", MethodId::kWald, 29, 39, 60.7, 88.1},
    {"sensitivity", MethodId::kWilson, 29, 39, 58.9, 85.4},
    {"sensitivity", MethodId::kClopperPearson, 29, 39, 57.9, 87.0},
    {"specificity", MethodId::kWald, 246, 248, 98.1, 100.3},
    {"specificity", MethodId::kWilson, 246, 248, 97.1, 99.8},
    {"specificity", MethodId::kClopperPearson, 246, 248, 97.1, 99.9},
};

int cmd_table1(const Options& opt, std::ostream& out) {
  Sink sink(opt.out, out);
  std::ostream& os = sink.get();
  os << "quantity,method,x,n,lower_pct,upper_pct,published_lower,"
        "published_upper,match\n";
  bool all = true;
  for (const auto& row : kPublished) {
    const IntervalEstimate ci =
        compute_interval(row.method, row.x, BinomialSetting(row.n, 0.95));
    // Raw limits: the published Wald specificity interval overshoots 100%.
    const std::string lo = percent_display(ci.raw_lower);
    const std::string hi = percent_display(ci.raw_upper);
    const bool match = std::fabs(std::stod(lo) - row.lower_pct) <= 0.05 + 1e-9 &&
                       std::fabs(std::stod(hi) - row.upper_pct) <= 0.05 + 1e-9;
    all = all && match;
    os << row.quantity << ',' << method_name(row.method) << ',' << row.x << ','
       << row.n << ',' << lo << ',' << hi << ',' << fmt("%.1f", row.lower_pct)
       << ',' << fmt("%.1f", row.upper_pct) << ','
       << (match ? "MATCH" : "MISMATCH") << '\n';
  }
  return all ? kExitOk : kExitFailure;
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--out", opt.out, "Write CSV to this path instead of stdout");
}

void add_workers(CLI::App* cmd, Options& opt) {
  cmd->add_option("--workers", opt.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
}

void add_quadrature(CLI::App* cmd, Options& opt) {
  cmd->add_option("--rel-tol", opt.rel_tol, "Quadrature relative tolerance");
  cmd->add_option("--abs-tol", opt.abs_tol, "Quadrature absolute tolerance");
}

}  // namespace

std::string percent_display(double proportion) {
  const double tenths = std::round(proportion * 1000.0);
  return fmt("%.1f", tenths / 10.0 + 0.0);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{"Binomial proportion intervals scored by coverage, width and "
               "the interval score"};
  app.name("binscore");
  app.require_subcommand(1);

  auto* interval = app.add_subcommand("interval", "Compute intervals for one outcome");
  interval->add_option("--x", opt.x, "Number of successes")->required();
  interval->add_option("--n", opt.n, "Sample size")->required();
  interval->add_option("--gamma", opt.gamma, "Confidence level");
  interval->add_option("--methods", opt.methods, "Comma-separated method names");
  add_common(interval, opt);

  auto* evaluate = app.add_subcommand("evaluate", "CP/EW/EIS curves over a pi grid");
  evaluate->add_option("--n", opt.n, "Sample size")->required();
  evaluate->add_option("--gamma", opt.gamma, "Confidence level");
  evaluate->add_option("--methods", opt.methods, "Comma-separated method names");
  evaluate->add_option("--grid", opt.grid, "Number of interior pi points");
  evaluate->add_option("--epsilon", opt.epsilon, "Smoothing half-width");
  add_quadrature(evaluate, opt);
  add_workers(evaluate, opt);
  add_common(evaluate, opt);

  auto* rank = app.add_subcommand("rank", "Integral summaries and rankings");
  rank->add_option("--methods", opt.methods, "Comma-separated method names");
  rank->add_option("--n", opt.n_list, "Sample size(s), comma-separated");
  rank->add_option("--n-range", opt.n_range, "Sample sizes start:stop:step");
  rank->add_option("--gamma", opt.gamma, "Confidence level");
  rank->add_option("--levels", opt.levels, "Levels for the weighted score");
  rank->add_option("--weights", opt.weights, "Weights for --levels");
  rank->add_option("--scale", opt.scale, "uniform, varstab or both");
  add_quadrature(rank, opt);
  add_workers(rank, opt);
  add_common(rank, opt);

  auto* verify = app.add_subcommand("verify", "Run the oracle cross-checks");
  verify->add_option("--seed", opt.seed, "Random seed");
  verify->add_option("--replications", opt.replications, "Monte Carlo draws per configuration");
  verify->add_option("--configs", opt.configs, "Number of Monte Carlo configurations");
  verify->add_option("--tolerance-scale", opt.tolerance_scale,
                     "Multiplier on every tolerance (0 forces failures)");
  add_workers(verify, opt);
  add_common(verify, opt);

  auto* table1 = app.add_subcommand("table1", "Reproduce the self-test example table");
  add_common(table1, opt);

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (*interval) return cmd_interval(opt, out);
    if (*evaluate) return cmd_evaluate(opt, out, err);
    if (*rank) return cmd_rank(opt, out, err);
    if (*verify) return cmd_verify(opt, out);
    if (*table1) return cmd_table1(opt, out);
    return kExitUsage;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace binscore::cli
