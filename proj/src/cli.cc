// Copyright 2026 The oneshot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oneshot/cli.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "oneshot/converse.h"
#include "oneshot/dtilde.h"
#include "oneshot/excess.h"
#include "oneshot/montecarlo.h"
#include "oneshot/random.h"
#include "oneshot/random_coding.h"
#include "oneshot/report.h"
#include "oneshot/variational.h"

namespace oneshot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIdentityTolerance = 1e-9;

std::int64_t CheckedPower(int base, int n, std::int64_t cap, const char* what) {
  std::int64_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= base;
    if (size > cap) {
      throw ValidationError(
          "n", fmt::format("|{}|^{} = {}^{} exceeds the cap {}", what, n, base,
                           n, cap));
    }
  }
  return size;
}

// Decodes tuple index t into letters, last letter fastest.
void DecodeTuple(std::int64_t t, int base, std::vector<int>& letters) {
  for (int i = static_cast<int>(letters.size()) - 1; i >= 0; --i) {
    letters[i] = static_cast<int>(t % base);
    t /= base;
  }
}

// Gradient of q -> D(w, q^n) through the product map.
std::vector<double> ProductGradient(const Problem& product, int n,
                                    std::span<const double> q, double w) {
  const int k = static_cast<int>(q.size());
  const std::vector<double> full =
      DualitySubgradient(product, ProductPrior(q, n), w);
  std::vector<double> grad(k, 0.0);
  std::vector<int> letters(n);
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(full.size()); ++t) {
    DecodeTuple(t, k, letters);
    for (int i = 0; i < n; ++i) {
      double others = 1.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) others *= q[letters[j]];
      }
      grad[letters[i]] += full[t] * others;
    }
  }
  return grad;
}

struct SingleLetterBest {
  double value = kInf;
  std::vector<double> q;
};

void Consider(const Problem& product, int n, std::span<const double> q,
              double w, SingleLetterBest& best) {
  const double value = DtildeAtPrior(product, ProductPrior(q, n), w);
  if (value < best.value) {
    best.value = value;
    best.q.assign(q.begin(), q.end());
  }
}

void DescendSingleLetter(const Problem& product, int n, std::vector<double> q,
                         double w, int iterations, SingleLetterBest& best) {
  for (int t = 1; t <= iterations; ++t) {
    Consider(product, n, q, w, best);
    const std::vector<double> g = ProductGradient(product, n, q, w);
    const double g_min = *std::min_element(g.begin(), g.end());
    double scale = 0.0;
    for (double v : g) scale = std::max(scale, v - g_min);
    if (!(scale > 0.0)) break;
    const double eta = 1.0 / (scale * std::sqrt(static_cast<double>(t)));
    for (std::size_t y = 0; y < q.size(); ++y) {
      q[y] *= std::exp(-eta * (g[y] - g_min));
    }
    const double sum = PairwiseSum(q);
    for (double& e : q) e /= sum;
  }
  Consider(product, n, q, w, best);
}

void GridSingleLetter(const Problem& product, int n, int k, double w,
                      double step, SingleLetterBest& best) {
  const int total = static_cast<int>(std::lround(1.0 / step));
  std::vector<double> q(k);
  std::function<void(int, int)> visit = [&](int position, int remaining) {
    if (position + 1 == k) {
      q[position] = static_cast<double>(remaining) / total;
      Consider(product, n, q, w, best);
      return;
    }
    for (int u = 0; u <= remaining; ++u) {
      q[position] = static_cast<double>(u) / total;
      visit(position + 1, remaining - u);
    }
  };
  visit(0, total);
}

// ---------------------------------------------------------------------------
// Output plumbing.

enum class Format { kCsv, kJson };

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void AddOutputOptions(CLI::App* sub, OutputOptions& options) {
  sub->add_option("--format", options.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", options.path, "write to this file, not stdout");
}

void Emit(const OutputOptions& options, const std::string& text,
          std::ostream& out) {
  if (options.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(options.path);
  if (!file) {
    throw ValidationError("out", "cannot open " + options.path);
  }
  file << text;
}

void EmitReport(const OutputOptions& options, const BoundReport& report,
                std::ostream& out) {
  Emit(options, options.format == "json" ? report.ToJson() : report.ToCsv(),
       out);
}

void EmitTable(const OutputOptions& options, const CsvTable& table,
               std::ostream& out) {
  Emit(options, options.format == "json" ? table.ToJson() : table.ToString(),
       out);
}

void AddVector(BoundReport& report, const std::string& name,
               std::span<const double> values, const std::string& method) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    report.Add(fmt::format("{}[{}]", name, i), values[i], method);
  }
}

class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Subcommands.

struct Args {
  std::string problem;
  OutputOptions output;
  int grid = 101;
  std::int64_t m = 2;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
  double rate = 1.0;
  std::optional<double> lambda;
  std::optional<double> d_req;
  std::string code;
  int iterations = PriorOptConfig{}.iterations;
  int starts = PriorOptConfig{}.random_starts;
  bool no_polish = false;
  std::optional<double> w;
  std::optional<double> delta;
  double d_th = 0.0;
  std::string mode = "curve";
  double sweep_lo = 2.0;
  double sweep_hi = 1e6;
  int n = 2;
  std::int64_t cap = kDefaultProductCap;
  std::optional<int> pc_x;
  bool min_uniform = false;
};

PriorOptConfig ConfigFrom(const Args& a) {
  PriorOptConfig config;
  config.iterations = a.iterations;
  config.random_starts = a.starts;
  config.exact_polish = !a.no_polish;
  return config;
}

void RunDtilde(const Args& a, std::ostream& out) {
  if (a.grid < 2) throw ValidationError("grid", "need at least 2 points");
  const DtildeFunction dtilde(LoadProblem(a.problem));
  CsvTable table({"w", "dtilde1", "dtilde", "is_breakpoint"});
  for (int i = 0; i < a.grid; ++i) {
    const double w = static_cast<double>(i) / (a.grid - 1);
    table.AddRow({w, dtilde.Dtilde1(w), dtilde.Dtilde(w), 0.0});
  }
  for (double b : dtilde.dtilde1().breakpoints()) {
    table.AddRow({b, dtilde.Dtilde1(b), dtilde.Dtilde(b), 1.0});
  }
  EmitTable(a.output, table, out);
}

void RunExact(const Args& a, std::ostream& out) {
  const Problem problem = LoadProblem(a.problem);
  const RandomCodingResult exact = ExactExpectedDistortion(problem, a.m);
  const MCEstimate mc =
      SimulateRandomCode(problem, a.m, a.trials, a.seed, a.threads);
  BoundReport report("exact");
  report.Add("M", static_cast<double>(a.m), "input");
  report.Add("exact", exact.exact_distortion, "closed form");
  report.Add("mc_mean", mc.mean, "monte carlo", 3.0 * mc.std_error);
  report.Add("mc_stderr", mc.std_error, "monte carlo");
  report.Add("within_3se",
             std::abs(exact.exact_distortion - mc.mean) <= 3.0 * mc.std_error
                 ? 1.0
                 : 0.0,
             "comparison");
  EmitReport(a.output, report, out);
}

void RunAchieve(const Args& a, std::ostream& out) {
  const Problem problem = LoadProblem(a.problem);
  const DtildeFunction dtilde(problem);
  BoundReport report("achieve");
  report.Add("R", a.rate, "input");
  report.Add("M", static_cast<double>(CodewordsForRate(a.rate)),
             "floor(e^R) + 1");
  const AchievabilityBound best =
      a.lambda ? RandomCodingBound(dtilde, problem.d_max(), a.rate, *a.lambda)
               : BestRandomCodingBound(dtilde, problem.d_max(), a.rate);
  report.Add("lambda", best.lambda, a.lambda ? "input" : "grid search");
  report.Add("w", best.w, "e^-(R-lambda)");
  report.Add("bound", best.bound, "D(w) + (D(1) - D(w)) f(lambda)");
  report.Add("dmax_bound", best.dmax_bound, "D(w) + d_max f(lambda)");
  if (a.d_req) {
    const RateForDistortion r = RateForDistortionLevel(problem, *a.d_req);
    report.Add("d_req", r.d_req, "input");
    report.Add("rate", r.rate, "min_z Rtilde(z) + f^-1");
    report.Add("raw_rate", r.raw_rate, "unclipped");
    report.Add("z", r.z, "minimizer");
    report.Add("rate_g", r.rate_g, "min_z Rtilde(z) + g");
    report.Add("z_g", r.z_g, "minimizer");
  }
  EmitReport(a.output, report, out);
}

void RunConverse(const Args& a, std::ostream& out) {
  const Problem problem = LoadProblem(a.problem);
  BoundReport report("converse");
  if (!a.code.empty()) {
    const Code code = ParseCode(a.code);
    ValidateCode(problem, code);
    const ConverseCheck check = ConverseEqualityCheck(problem, code);
    report.Add("lhs", check.lhs, "code distortion");
    report.Add("rhs", check.rhs, "D(1/M, Q^C)", kConverseTolerance);
    report.Add("gap", check.gap, "|lhs - rhs|", kConverseTolerance);
    EmitReport(a.output, report, out);
    if (!check.holds()) {
      throw AssertionFailure(fmt::format("converse gap {} exceeds {}",
                                         check.gap, kConverseTolerance));
    }
    return;
  }
  const SandwichResult s =
      DhatSandwich(problem, a.rate, DefaultLambdaGrid(a.rate), ConfigFrom(a));
  report.Add("R", a.rate, "input");
  report.Add("lower", s.lower, "min_Q D(e^-R, Q)");
  report.Add("upper", s.upper, "min_lambda D(e^-(R-lambda)) + d_max f");
  report.Add("best_lambda", s.best_lambda, "grid search");
  AddVector(report, "q_star", s.q_star, "prior optimization");
  EmitReport(a.output, report, out);
  if (!s.ordered()) {
    throw AssertionFailure(
        fmt::format("lower {} exceeds upper {}", s.lower, s.upper));
  }
}

void RunOptimizePrior(const Args& a, std::ostream& out) {
  const Problem problem = LoadProblem(a.problem);
  const PriorOptResult r = OptimizePrior(problem, a.rate, ConfigFrom(a));
  BoundReport report("optimize-prior");
  report.Add("R", a.rate, "input");
  report.Add("value", r.value, "min_Q D(e^-R, Q)", r.certificate_gap);
  report.Add("descent_value", r.descent_value, "exponentiated gradient");
  if (r.grid_value) report.Add("grid_value", *r.grid_value, "simplex grid");
  if (r.lp_value) report.Add("lp_value", *r.lp_value, "joint linear program");
  report.Add("certificate_gap", r.certificate_gap, r.certificate);
  report.Add("iterations", r.iterations, "descent");
  AddVector(report, "q_star", r.q_star, "minimizer");
  EmitReport(a.output, report, out);
}

void RunVariational(const Args& a, std::ostream& out) {
  const Problem problem = LoadProblem(a.problem);
  const double w = a.w ? *a.w : std::exp(-a.rate);
  if (!(w > 0.0 && w <= 1.0)) throw ValidationError("w", "outside (0, 1]");
  const double rate = -std::log(w);
  const double dtilde = Dtilde(problem, w);
  const SupFormResult sup = SupFormValue(problem, w);
  const InfFormResult inf = InfFormValue(problem, rate);
  BoundReport report("variational");
  report.Add("w", w, "input");
  report.Add("dtilde", dtilde, "direct");
  report.Add("sup_form", sup.value, "beta_w at witness Q_X",
             kIdentityTolerance);
  report.Add("w_dtilde", w * dtilde, "w D(w)");
  report.Add("max_random_beta", sup.max_random_beta, "random Q_X");
  report.Add("inf_form", inf.value, "greedy D_inf-constrained channel",
             kIdentityTolerance);
  AddVector(report, "witness_q_x", sup.witness.q_x, "witness");
  bool ok = std::abs(sup.value - w * dtilde) <= kIdentityTolerance &&
            std::abs(inf.value - dtilde) <= kIdentityTolerance &&
            sup.random_dominated;
  if (a.delta) {
    const InfoSpectrumCheck s =
        InfoSpectrumInequality(problem, inf.channel, rate, *a.delta);
    report.Add("spectrum_event_probability", s.event_probability,
               "P[i(X;Y) <= R - delta]");
    report.Add("spectrum_lhs", s.lhs, "D(w', Q_Y)");
    report.Add("spectrum_rhs", s.rhs, "E[d] e^lambda");
    report.Add("spectrum_holds", s.holds ? 1.0 : 0.0,
               s.vacuous ? "vacuous" : "comparison");
  }
  EmitReport(a.output, report, out);
  if (!ok) throw AssertionFailure("variational identities do not hold");
}

void RunExcess(const Args& a, std::ostream& out) {
  if (a.mode == "gap") {
    const BoundGapSweep sweep = SweepBoundGap(a.sweep_lo, a.sweep_hi, a.grid);
    CsvTable table({"x", "g", "loglog", "diff"});
    for (const BoundGap& p : sweep.points) {
      table.AddRow({p.x, p.ours, p.theirs, p.diff});
    }
    EmitTable(a.output, table, out);
    return;
  }
  const Problem problem = LoadProblem(a.problem);
  if (a.mode == "curve") {
    if (a.grid < 2) throw ValidationError("grid", "need at least 2 points");
    const DtildeFunction dtilde(ExcessProblem(problem, a.d_th));
    CsvTable table({"R", "excess_unnormalized", "excess"});
    const double r_max = a.rate;
    for (int i = 0; i < a.grid; ++i) {
      const double r = r_max * i / (a.grid - 1);
      const double w = std::exp(-r);
      table.AddRow({r, dtilde.Dtilde1(w), dtilde.Dtilde(w)});
    }
    EmitTable(a.output, table, out);
    return;
  }
  BoundReport report("excess");
  if (a.mode == "rate") {
    if (!a.delta) throw ValidationError("delta", "required in rate mode");
    report.Add("d_th", a.d_th, "input");
    report.Add("delta", *a.delta, "input");
    report.Add("rate", ExcessRate(problem, *a.delta, a.d_th),
               "Rtilde of the indicator distortion");
    EmitReport(a.output, report, out);
    return;
  }
  // mode == "mfunctional": the joint P_X x W^w of the test channel.
  const double w = std::exp(-a.rate);
  const Matrix joint =
      JointDistribution(problem.p_x(), TestChannel(problem, w));
  const DInfIdentityCheck check = DInfIdentity(joint);
  report.Add("m_functional", MFunctional(joint), "sum_y max_x W(y|x)");
  report.Add("lhs", check.lhs, "D_inf(P_XY || P_X x Q*)", 1e-10);
  report.Add("rhs", check.rhs, "log M(P_XY)", 1e-10);
  report.Add("gap", check.gap, "|lhs - rhs|", 1e-10);
  report.Add("min_random_excess", check.min_random_excess, "random Q");
  EmitReport(a.output, report, out);
  if (!check.holds()) throw AssertionFailure("D_inf identity does not hold");
}

void RunSimulate(const Args& a, std::ostream& out) {
  BoundReport report("simulate");
  if (a.min_uniform) {
    const EmpiricalCdfSummary s = SampleMinUniform(a.m, a.trials, a.seed);
    report.Add("mean", s.mean, "min of M uniforms", 3.0 * s.std_error);
    report.Add("stderr", s.std_error, "monte carlo");
    report.Add("ks", s.ks_statistic, "Kolmogorov-Smirnov", s.critical_value);
    report.Add("ks_passes", s.passes ? 1.0 : 0.0, "alpha = 1e-3");
    EmitReport(a.output, report, out);
    return;
  }
  const Problem problem = LoadProblem(a.problem);
  if (a.pc_x) {
    const EmpiricalCdfSummary s =
        SamplePcUniformity(problem, *a.pc_x, a.trials, a.seed);
    report.Add("mean", s.mean, "p_c(x, Y, U)", 3.0 * s.std_error);
    report.Add("stderr", s.std_error, "monte carlo");
    report.Add("ks", s.ks_statistic, "Kolmogorov-Smirnov", s.critical_value);
    report.Add("ks_passes", s.passes ? 1.0 : 0.0, "alpha = 1e-3");
    EmitReport(a.output, report, out);
    return;
  }
  const MCEstimate mc =
      SimulateRandomCode(problem, a.m, a.trials, a.seed, a.threads);
  report.Add("M", static_cast<double>(a.m), "input");
  report.Add("mean", mc.mean, "monte carlo", 3.0 * mc.std_error);
  report.Add("stderr", mc.std_error, "monte carlo");
  report.Add("trials", static_cast<double>(mc.trials), "input");
  EmitReport(a.output, report, out);
}

void RunProductPrior(const Args& a, std::ostream& out) {
  const Problem base = LoadProblem(a.problem);
  const ProductPriorReport r =
      ProductPriorExperiment(base, a.n, a.rate, a.cap, ConfigFrom(a));
  BoundReport report("product-prior-experiment");
  report.Add("n", r.n, "input");
  report.Add("R", r.rate, "input (per letter)");
  report.Add("w", r.w, "e^-nR");
  report.Add("product_value", r.product_value, "best product prior");
  report.Add("full_value", r.full_value, "full product simplex");
  report.Add("gap", r.gap, "product - full");
  AddVector(report, "product_q", r.product_q, "single-letter prior");
  EmitReport(a.output, report, out);
}

}  // namespace

Problem ProductProblem(const Problem& base, int n, std::int64_t cap) {
  if (n < 1) throw ValidationError("n", fmt::format("n = {} must be >= 1", n));
  const std::int64_t xs = CheckedPower(base.x_size(), n, cap, "X");
  const std::int64_t ys = CheckedPower(base.y_size(), n, cap, "Y");
  Matrix d(static_cast<int>(xs), static_cast<int>(ys));
  std::vector<int> xl(n), yl(n);
  for (std::int64_t x = 0; x < xs; ++x) {
    DecodeTuple(x, base.x_size(), xl);
    for (std::int64_t y = 0; y < ys; ++y) {
      DecodeTuple(y, base.y_size(), yl);
      double total = 0.0;
      for (int i = 0; i < n; ++i) total += base.d(xl[i], yl[i]);
      d(static_cast<int>(x), static_cast<int>(y)) = total / n;
    }
  }
  return Problem(ProductPrior(base.p_x(), n), ProductPrior(base.q_y(), n),
                 std::move(d));
}

std::vector<double> ProductPrior(std::span<const double> q, int n) {
  std::vector<double> out(1, 1.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> next;
    next.reserve(out.size() * q.size());
    for (double a : out) {
      for (double b : q) next.push_back(a * b);
    }
    out = std::move(next);
  }
  return out;
}

ProductPriorReport ProductPriorExperiment(const Problem& base, int n,
                                          double rate, std::int64_t cap,
                                          const PriorOptConfig& config) {
  if (!(rate >= 0.0)) {
    throw ValidationError("R", fmt::format("R = {} must be >= 0", rate));
  }
  ProductPriorReport report;
  report.n = n;
  report.rate = rate;
  const Problem product = ProductProblem(base, n, cap);
  report.w = std::exp(-n * rate);
  const PriorOptResult full = OptimizePrior(product, n * rate, config);
  report.full_value = full.value;
  report.full_q = full.q_star;
  if (n == 1) {
    report.product_value = full.value;
    report.product_q = full.q_star;
    return report;
  }

  const int k = base.y_size();
  SingleLetterBest best;
  std::vector<double> marginal(k, 0.0);
  std::vector<int> letters(n);
  for (std::size_t t = 0; t < full.q_star.size(); ++t) {
    DecodeTuple(static_cast<std::int64_t>(t), k, letters);
    for (int l : letters) marginal[l] += full.q_star[t] / n;
  }
  std::vector<std::vector<double>> starts = {std::vector<double>(k, 1.0 / k),
                                             marginal};
  for (int s = 0; s < config.random_starts; ++s) {
    std::mt19937_64 gen = SeededStream(config.seed, s);
    starts.push_back(RandomSimplexPoint(gen, k));
  }
  for (std::vector<double>& q : starts) {
    for (double& e : q) e = std::max(e, 1e-12);
    const double sum = PairwiseSum(q);
    for (double& e : q) e /= sum;
    DescendSingleLetter(product, n, q, report.w, config.iterations, best);
  }
  if (k <= config.grid_max_y) {
    GridSingleLetter(product, n, k, report.w, config.grid_step, best);
  }
  report.product_value = best.value;
  report.product_q = best.q;
  report.gap = report.product_value - report.full_value;
  return report;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"One-shot lossy source coding bounds", "oneshot"};
  app.require_subcommand(1);
  Args a;

  const auto problem_option = [&a](CLI::App* sub) {
    sub->add_option("--problem", a.problem, "problem JSON file")->required();
  };
  const auto prior_options = [&a](CLI::App* sub) {
    sub->add_option("--iterations", a.iterations, "descent iterations");
    sub->add_option("--starts", a.starts, "random descent starts");
    sub->add_flag("--no-polish", a.no_polish, "skip the exact LP polish");
  };
  std::function<void(std::ostream&)> action;

  CLI::App* dtilde = app.add_subcommand("dtilde", "D1 and D curve");
  problem_option(dtilde);
  dtilde->add_option("--grid", a.grid, "uniform grid points on [0, 1]");
  AddOutputOptions(dtilde, a.output);
  dtilde->callback([&] { action = [&](std::ostream& o) { RunDtilde(a, o); }; });

  CLI::App* exact =
      app.add_subcommand("exact", "random-coding distortion with MC check");
  problem_option(exact);
  exact->add_option("--M", a.m, "codewords")->required();
  exact->add_option("--trials", a.trials, "Monte Carlo trials");
  exact->add_option("--seed", a.seed, "Monte Carlo seed");
  exact->add_option("--threads", a.threads, "worker threads, 0 = all");
  AddOutputOptions(exact, a.output);
  exact->callback([&] { action = [&](std::ostream& o) { RunExact(a, o); }; });

  CLI::App* achieve = app.add_subcommand("achieve", "achievability bounds");
  problem_option(achieve);
  achieve->add_option("--R", a.rate, "rate in nats")->required();
  achieve->add_option("--lambda", a.lambda, "slack; searched when omitted");
  achieve->add_option("--D", a.d_req, "target distortion for the rate bound");
  AddOutputOptions(achieve, a.output);
  achieve->callback(
      [&] { action = [&](std::ostream& o) { RunAchieve(a, o); }; });

  CLI::App* converse =
      app.add_subcommand("converse", "code equality check or D-hat sandwich");
  problem_option(converse);
  converse->add_option("--code", a.code, "comma-separated codeword indices");
  converse->add_option("--R", a.rate, "rate in nats for the sandwich");
  prior_options(converse);
  AddOutputOptions(converse, a.output);
  converse->callback(
      [&] { action = [&](std::ostream& o) { RunConverse(a, o); }; });

  CLI::App* optimize =
      app.add_subcommand("optimize-prior", "minimize D(e^-R, Q) over Q");
  problem_option(optimize);
  optimize->add_option("--R", a.rate, "rate in nats")->required();
  prior_options(optimize);
  AddOutputOptions(optimize, a.output);
  optimize->callback(
      [&] { action = [&](std::ostream& o) { RunOptimizePrior(a, o); }; });

  CLI::App* variational =
      app.add_subcommand("variational", "sup and inf forms of D");
  problem_option(variational);
  variational->add_option("--w", a.w, "quantile in (0, 1]");
  variational->add_option("--R", a.rate, "rate, used when --w is absent");
  variational->add_option("--delta", a.delta,
                          "also run the information-spectrum check");
  AddOutputOptions(variational, a.output);
  variational->callback(
      [&] { action = [&](std::ostream& o) { RunVariational(a, o); }; });

  CLI::App* excess = app.add_subcommand(
      "excess", "excess-distortion curves, M functional, g comparison");
  excess->add_option("--problem", a.problem, "problem JSON file");
  excess->add_option("--mode", a.mode, "curve, rate, mfunctional or gap")
      ->check(CLI::IsMember({"curve", "rate", "mfunctional", "gap"}));
  excess->add_option("--d-th", a.d_th, "distortion threshold");
  excess->add_option("--delta", a.delta, "excess probability (rate mode)");
  excess->add_option("--R", a.rate, "largest rate (curve) or rate of W");
  excess->add_option("--grid", a.grid, "samples");
  excess->add_option("--lo", a.sweep_lo, "sweep start (gap mode)");
  excess->add_option("--hi", a.sweep_hi, "sweep end (gap mode)");
  AddOutputOptions(excess, a.output);
  excess->callback([&] {
    if (a.mode != "gap" && a.problem.empty()) {
      throw CLI::RequiredError("--problem");
    }
    action = [&](std::ostream& o) { RunExcess(a, o); };
  });

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo only");
  simulate->add_option("--problem", a.problem, "problem JSON file");
  simulate->add_option("--M", a.m, "codewords");
  simulate->add_option("--trials", a.trials, "trials");
  simulate->add_option("--seed", a.seed, "seed");
  simulate->add_option("--threads", a.threads, "worker threads, 0 = all");
  simulate->add_option("--pc-x", a.pc_x, "sample p_c for this source letter");
  simulate->add_flag("--min-uniform", a.min_uniform,
                     "sample the minimum of M uniforms");
  AddOutputOptions(simulate, a.output);
  simulate->callback([&] {
    if (!a.min_uniform && a.problem.empty()) {
      throw CLI::RequiredError("--problem");
    }
    action = [&](std::ostream& o) { RunSimulate(a, o); };
  });

  CLI::App* product = app.add_subcommand("product-prior-experiment",
                                         "product versus full priors on X^n");
  problem_option(product);
  product->add_option("--n", a.n, "block length")->required();
  product->add_option("--R", a.rate, "per-letter rate in nats")->required();
  product->add_option("--cap", a.cap, "largest alphabet size allowed");
  prior_options(product);
  AddOutputOptions(product, a.output);
  product->callback(
      [&] { action = [&](std::ostream& o) { RunProductPrior(a, o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    action(out);
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace oneshot
