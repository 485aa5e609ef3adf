#pragma once

// `qwalk` command line: verification runs and data exports with JSON
// reports (CSV for distributions). Exit codes: 0 all checks pass, 1 a
// numerical check failed, 2 bad usage or invalid input.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwalk/acceptance.hpp"
#include "qwalk/classical.hpp"
#include "qwalk/coin.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/evolution.hpp"
#include "qwalk/functional.hpp"
#include "qwalk/ito.hpp"

namespace qwalk::cli {

using Json = nlohmann::ordered_json;

inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json to_json(const Mat2& m) {
  return Json::array({Json::array({to_json(m.a), to_json(m.b)}),
                      Json::array({to_json(m.c), to_json(m.d)})});
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

/// Collects named residual checks; pass = residual <= tol for each.
class RunReport {
 public:
  RunReport(std::string command, std::vector<std::string> argv)
      : start_(std::chrono::steady_clock::now()) {
    body_["command"] = std::move(command);
    body_["argv"] = std::move(argv);
  }

  Json& operator[](const std::string& key) { return body_[key]; }

  void check(const std::string& name, double residual, double tol) {
    const bool ok = residual <= tol;
    body_["checks"][name] = Json{{"residual", residual}, {"tol", tol}, {"pass", ok}};
    if (!ok && !failure_) failure_ = name + ": residual " + format_number(residual) + " > tol " +
                                     format_number(tol);
  }

  bool pass() const { return !failure_; }
  const std::optional<std::string>& failure() const { return failure_; }

  /// Writes the report and returns the exit code.
  int finish(std::ostream& out, std::ostream& err) {
    body_["pass"] = pass();
    body_["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    out << body_.dump(2) << "\n";
    if (failure_) {
      err << "numerical check failed: " << *failure_ << "\n";
      return 1;
    }
    return 0;
  }

 private:
  Json body_;
  std::chrono::steady_clock::time_point start_;
  std::optional<std::string> failure_;
};

struct Options {
  std::string coin = "hadamard";
  int n = 0;
  std::string f;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  std::string alpha = "1,0";
  std::string beta = "0,0";
  std::string method = "recursion";
  std::string out = "json";
  std::string check;
  double xi = 0.0;
  int samples = 0;
  double p = 0.5;
  unsigned threads = 1;
};

inline QubitState initial_state(const Options& o) {
  return QubitState(parse_complex(o.alpha), parse_complex(o.beta));
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

inline int cmd_verify_ito(const Options& o, RunReport& r, std::ostream& out, std::ostream& err) {
  const Coin coin = parse_coin(o.coin);
  const auto f = parse_function_table(o.f.empty() ? "random" : o.f, o.n, o.seed);
  const SigmaOptions sigma_opts{Evaluator::SharedPrefix, o.threads};
  double step_max = 0.0;
  for (int m = 0; m < o.n; ++m)
    step_max = std::max(step_max, ito_step(coin, o.n, m, f, sigma_opts).residual());
  const auto tele = ito_telescoped(coin, o.n, f, sigma_opts);
  r["n"] = o.n;
  r["coin"] = o.coin;
  r["f"] = f.name();
  r["seed"] = o.seed;
  r["residual_step_max"] = step_max;
  r["residual_telescoped"] = tele.residual();
  r.check("ito_step", step_max, o.tol);
  r.check("ito_telescoped", tele.residual(), o.tol);
  return r.finish(out, err);
}

inline int cmd_tanaka(const Options& o, RunReport& r, std::ostream& out, std::ostream& err) {
  const Coin coin = parse_coin(o.coin);
  const QubitState phi = initial_state(o);
  const auto t = tanaka(coin, o.n, {Evaluator::SharedPrefix, o.threads});
  r["n"] = o.n;
  r["coin"] = o.coin;
  r["lhs"] = to_json(t.lhs());
  r["sign_term"] = to_json(t.sign_term());
  r["local_time"] = to_json(t.local_time());
  // <phi, L phi> for the local-time operator and the lhs
  r["phi_local_time_phi"] = to_json(inner(phi.vec(), t.local_time() * phi.vec()));
  r["phi_lhs_phi"] = to_json(inner(phi.vec(), t.lhs() * phi.vec()));
  r["residual"] = t.residual();
  r.check("tanaka", t.residual(), o.tol);
  return r.finish(out, err);
}

inline int cmd_char(const Options& o, RunReport& r, std::ostream& out, std::ostream& err) {
  const Coin coin = parse_coin(o.coin);
  std::vector<double> xis;
  if (o.samples > 0) {
    for (int j = 0; j < o.samples; ++j)
      xis.push_back(-std::numbers::pi + 2.0 * std::numbers::pi * j / o.samples);
  } else {
    xis.push_back(o.xi);
  }
  r["n"] = o.n;
  r["coin"] = o.coin;
  double worst = 0.0;
  Json rows = Json::array();
  for (double xi : xis) {
    const auto d = char_decomposition(coin, o.n, xi, {Evaluator::SharedPrefix, o.threads});
    worst = std::max(worst, d.residual());
    Json row{{"xi", xi}, {"residual", d.residual()}};
    if (xis.size() == 1) {
      row["u_xi_power"] = to_json(d.lhs_power);
      row["path_sum"] = to_json(d.lhs_paths);
      row["u_power"] = to_json(d.term0);
      row["sin_term"] = to_json(d.sin_term);
      row["cos_term"] = to_json(d.cos_term);
    }
    rows.push_back(std::move(row));
  }
  r["samples"] = std::move(rows);
  r["residual_max"] = worst;
  r.check("char_decomposition", worst, o.tol);
  return r.finish(out, err);
}

inline int cmd_dist(const Options& o, RunReport& r, std::ostream& out, std::ostream& err) {
  const Coin coin = parse_coin(o.coin);
  const QubitState phi = initial_state(o);
  DistributionMethod method;
  if (o.method == "paths")
    method = DistributionMethod::Paths;
  else if (o.method == "recursion")
    method = DistributionMethod::Recursion;
  else if (o.method == "fourier")
    method = DistributionMethod::Fourier;
  else
    throw std::invalid_argument("--method must be paths, recursion or fourier");
  const auto field = amplitudes(coin, phi, o.n, method);
  const auto d = distribution(field);
  if (o.out == "csv") {
    out << "x,prob,psiL_re,psiL_im,psiR_re,psiR_im\n";
    for (int x = -o.n; x <= o.n; x += 2) {
      const Vec2& v = field.at(x);
      out << x << ',' << format_number(d.at(x)) << ',' << format_number(v.l.real()) << ','
          << format_number(v.l.imag()) << ',' << format_number(v.r.real()) << ','
          << format_number(v.r.imag()) << '\n';
    }
    const double gap = std::abs(d.total() - 1.0);
    if (gap > o.tol) {
      err << "numerical check failed: total_probability: residual " << format_number(gap)
          << " > tol " << format_number(o.tol) << "\n";
      return 1;
    }
    return 0;
  }
  if (o.out != "json") throw std::invalid_argument("--out must be csv or json");
  r["n"] = o.n;
  r["coin"] = o.coin;
  r["method"] = o.method;
  Json rows = Json::array();
  for (int x = -o.n; x <= o.n; x += 2) {
    const Vec2& v = field.at(x);
    rows.push_back(Json{{"x", x}, {"prob", d.at(x)}, {"psiL", to_json(v.l)}, {"psiR", to_json(v.r)}});
  }
  r["distribution"] = std::move(rows);
  r.check("total_probability", std::abs(d.total() - 1.0), o.tol);
  return r.finish(out, err);
}

inline int cmd_qintegral(const Options& o, RunReport& r, std::ostream& out, std::ostream& err) {
  const Coin coin = parse_coin(o.coin);
  const QubitState phi = initial_state(o);
  const auto f = parse_path_functional(o.f.empty() ? "const:1" : o.f);
  const double value = quantum_integral(coin, phi, o.n, f);
  r["n"] = o.n;
  r["coin"] = o.coin;
  r["f"] = f.name();
  r["integral"] = value;
  if (o.n <= 8) {
    std::vector<double> values(path_count(o.n));
    for (PathIndex k = 0; k < values.size(); ++k)
      values[k] = f(path_from_index(o.n, k).view()).real();
    const double direct = DecoherenceMatrix(coin, phi, o.n).min_kernel_sum(values);
    r["integral_direct"] = direct;
    r.check("matrix_free_vs_direct", std::abs(value - direct), o.tol);
  }
  return r.finish(out, err);
}

inline int cmd_decoherence(const Options& o, RunReport& r, std::ostream& out, std::ostream& err) {
  const Coin coin = parse_coin(o.coin);
  const QubitState phi = initial_state(o);
  if (o.out != "json") throw std::invalid_argument("--out must be json");
  const auto checks = split_list(o.check.empty() ? "hermitian,psd,grandsum" : o.check);
  r["n"] = o.n;
  r["coin"] = o.coin;
  if (o.n > kDefaultDenseDecoherenceSteps) {
    err << "warning: n = " << o.n << " exceeds the dense cap " << kDefaultDenseDecoherenceSteps
        << "; using the matrix-free path (grandsum only)\n";
    r["mode"] = "matrix-free";
    for (const auto& c : checks) {
      if (c == "grandsum") {
        const double g = quantum_integral(coin, phi, o.n, constant_functional(1.0));
        r["grand_sum"] = g;
        r.check("grandsum", std::abs(g - 1.0), o.tol);
      } else if (c == "hermitian" || c == "psd") {
        r["skipped"].push_back(c);
      } else {
        throw std::invalid_argument("unknown check '" + c + "'");
      }
    }
    return r.finish(out, err);
  }
  r["mode"] = "dense";
  const DecoherenceMatrix d(coin, phi, o.n);
  for (const auto& c : checks) {
    if (c == "hermitian") {
      r.check("hermitian", d.hermitian_deviation(), o.tol);
    } else if (c == "psd") {
      const double lo = d.min_eigenvalue();
      r["min_eigenvalue"] = lo;
      r.check("psd", std::max(0.0, -lo), std::max(o.tol, 1e-10));
    } else if (c == "grandsum") {
      r["grand_sum"] = to_json(d.grand_sum());
      r.check("grandsum", std::abs(d.grand_sum() - 1.0), o.tol);
    } else {
      throw std::invalid_argument("unknown check '" + c + "'");
    }
  }
  return r.finish(out, err);
}

inline int cmd_classical(const Options& o, RunReport& r, std::ostream& out, std::ostream& err) {
  const StepWeights wts(o.p);
  const auto f = parse_function_table(o.f.empty() ? "random" : o.f, o.n, o.seed);
  const SigmaOptions sigma_opts{Evaluator::SharedPrefix, o.threads};
  r["n"] = o.n;
  r["p"] = wts.p();
  r["q"] = wts.q();
  r["f"] = f.name();
  const auto checks = split_list(o.check.empty() ? "ito,doob,binomial" : o.check);
  for (const auto& c : checks) {
    if (c == "ito") {
      r.check("ito", classical_theorem_check(wts, o.n, f, sigma_opts), o.tol);
    } else if (c == "doob") {
      const auto dm = doob_meyer(wts, o.n, f, sigma_opts);
      r["doob_meyer"] = Json{{"martingale_expect", to_json(dm.martingale_expect)},
                             {"compensator_expect", to_json(dm.compensator_expect)},
                             {"total_expect", to_json(dm.total_expect)}};
      r.check("doob_decomposition",
              std::abs(dm.total_expect - dm.martingale_expect - dm.compensator_expect), o.tol);
      if (wts.p() == 0.5) r.check("martingale_mean_zero", std::abs(dm.martingale_expect), o.tol);
    } else if (c == "binomial") {
      double worst = 0.0;
      for (int right = 0; right <= o.n; ++right) {
        const double mass =
            classical_sigma(wts, o.n, endpoint_indicator(2 * right - o.n), sigma_opts).real();
        const double exact = double(binomial(o.n, right)) * std::pow(wts.p(), o.n - right) *
                             std::pow(wts.q(), right);
        worst = std::max(worst, std::abs(mass - exact));
      }
      r.check("binomial", worst, o.tol);
    } else {
      throw std::invalid_argument("unknown check '" + c + "'");
    }
  }
  return r.finish(out, err);
}

inline int cmd_sweep(RunReport& r, std::ostream& out, std::ostream& err) {
  Json criteria = Json::array();
  for (const auto& criterion : acceptance::all_criteria()) {
    const auto res = criterion();
    err << acceptance::summary_line(res) << "\n";
    Json checks = Json::array();
    for (const auto& c : res.checks)
      checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"limit", c.limit}, {"pass", c.pass}});
    criteria.push_back(Json{{"id", res.id}, {"title", res.title}, {"pass", res.pass()},
                            {"checks", std::move(checks)}});
    r.check("criterion_" + std::to_string(res.id), res.pass() ? 0.0 : 1.0, 0.0);
  }
  r["criteria"] = std::move(criteria);
  return r.finish(out, err);
}

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"qwalk: discrete-time quantum walk path sums and Ito identities"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--threads", o.threads, "worker cap for path sums")
      ->check(CLI::Range(1u, 256u));

  auto add_coin = [&](CLI::App* s) {
    s->add_option("--coin", o.coin, "'hadamard' or a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im");
  };
  auto add_n = [&](CLI::App* s) {
    s->add_option("--n", o.n, "number of steps")->required()->check(CLI::NonNegativeNumber);
  };
  auto add_tol = [&](CLI::App* s, double def) {
    o.tol = def;
    s->add_option("--tol", o.tol, "absolute residual tolerance");
  };
  auto add_state = [&](CLI::App* s) {
    s->add_option("--alpha", o.alpha, "initial L amplitude 're,im'");
    s->add_option("--beta", o.beta, "initial R amplitude 're,im'");
  };

  auto* ito = app.add_subcommand("verify-ito", "check the operator Ito formula");
  add_coin(ito);
  add_n(ito);
  ito->add_option("--f", o.f, "random|x|abs|ceil|square|const:c|exp:xi|table:file");
  ito->add_option("--seed", o.seed, "seed for --f random");
  ito->add_option("--tol", o.tol, "absolute residual tolerance");

  auto* tan = app.add_subcommand("tanaka", "Tanaka decomposition for f(x) = |x|");
  add_coin(tan);
  add_n(tan);
  add_state(tan);
  tan->add_option("--tol", o.tol, "absolute residual tolerance");

  auto* chr = app.add_subcommand("char", "characteristic-function decomposition of U(xi)^n");
  add_coin(chr);
  add_n(chr);
  chr->add_option("--xi", o.xi, "momentum");
  chr->add_option("--samples", o.samples, "use M uniform xi in [-pi, pi) instead of --xi");
  chr->add_option("--tol", o.tol, "absolute residual tolerance");

  auto* dst = app.add_subcommand("dist", "position distribution at time n");
  add_coin(dst);
  add_n(dst);
  add_state(dst);
  dst->add_option("--method", o.method, "paths|recursion|fourier");
  dst->add_option("--out", o.out, "csv|json");
  dst->add_option("--tol", o.tol, "tolerance on total probability");

  auto* qin = app.add_subcommand("qintegral", "quantum integral with the min kernel");
  add_coin(qin);
  add_n(qin);
  add_state(qin);
  qin->add_option("--f", o.f, "const:c|endpoint_indicator:x|endpoint_table:file|cylinder:x");
  qin->add_option("--tol", o.tol, "tolerance for the direct double-sum cross-check");

  auto* dec = app.add_subcommand("decoherence", "decoherence matrix checks");
  add_coin(dec);
  add_n(dec);
  add_state(dec);
  dec->add_option("--check", o.check, "comma list of hermitian,psd,grandsum");
  dec->add_option("--out", o.out, "json");
  dec->add_option("--tol", o.tol, "absolute tolerance");

  auto* cls = app.add_subcommand("classical", "simple random walk reduction");
  cls->add_option("--p", o.p, "left-step probability");
  add_n(cls);
  cls->add_option("--f", o.f, "function spec, as for verify-ito");
  cls->add_option("--seed", o.seed, "seed for --f random");
  cls->add_option("--check", o.check, "comma list of ito,doob,binomial");
  cls->add_option("--tol", o.tol, "absolute tolerance");

  auto* swp = app.add_subcommand("sweep", "run the full acceptance suite");
  (void)add_tol;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    auto* sub = app.get_subcommands().front();
    RunReport report(sub->get_name(), args);
    if (sub == swp) return cmd_sweep(report, out, err);
    if (sub == cls) return cmd_classical(o, report, out, err);
    if (o.n < 1 && sub != dst) throw std::invalid_argument("--n must be >= 1");
    if (sub == ito) return cmd_verify_ito(o, report, out, err);
    if (sub == tan) return cmd_tanaka(o, report, out, err);
    if (sub == chr) return cmd_char(o, report, out, err);
    if (sub == dst) return cmd_dist(o, report, out, err);
    if (sub == qin) return cmd_qintegral(o, report, out, err);
    if (sub == dec) return cmd_decoherence(o, report, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace qwalk::cli
