// Copyright 2026 sympl contributors.
//
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

// Command-line front end. Exit codes are a contract:
//   0  success
//   2  parse or usage error (flags, matrix files, bad preconditions)
//   3  input matrix not positive definite
//   4  decomposition residual above --tol
//   5  finite-difference check disagrees with the closed form
// Reports are printed after the human-readable lines as a JSON document
// whose payload reproduces bit-for-bit under the same seed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"
#include "report.hpp"
#include "sympl/core.hpp"
#include "sympl/errors.hpp"
#include "sympl/harness.hpp"
#include "sympl/matrix.hpp"
#include "sympl/sensitivity.hpp"
#include "sympl/subdifferential.hpp"
#include "sympl/verify.hpp"
#include "sympl/williamson.hpp"

namespace {

using sympl::cli::format_full;
using sympl::cli::format_short;
using sympl::cli::Json;
using sympl::cli::LoadedMatrix;

std::string make_echo(int argc, char** argv) {
  std::string echo = std::filesystem::path(argv[0]).filename().string();
  for (int k = 1; k < argc; ++k) {
    echo += ' ';
    echo += argv[k];
  }
  return echo;
}

Json input_entry(const LoadedMatrix& lm) {
  Json j = Json::object();
  j.set("path", Json::str(lm.path));
  j.set("format", Json::str(lm.format));
  j.set("digest", Json::str(lm.digest));
  j.set("dim", Json::integer(static_cast<std::int64_t>(lm.a.dim())));
  j.set("max_asymmetry", Json::number(lm.max_asymmetry));
  return j;
}

Json base_report(const std::string& command, const std::string& echo,
                 std::uint64_t seed) {
  Json j = Json::object();
  j.set("command", Json::str(command));
  j.set("echo", Json::str(echo));
  j.set("seed", Json::uinteger(seed));
  return j;
}

void emit(const Json& report) { std::printf("\n%s\n", report.dump().c_str()); }

void print_values_line(const char* label, const std::vector<double>& values) {
  std::string line = label;
  line += ':';
  for (const double v : values) {
    line += ' ';
    line += format_short(v);
  }
  std::printf("%s\n", line.c_str());
}

void print_matrix(const sympl::Mat& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::string line = "  ";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) line += ' ';
      line += format_short(a(i, j));
    }
    std::printf("%s\n", line.c_str());
  }
}

struct SpectrumArgs {
  std::string file;
};

int cmd_spectrum(const SpectrumArgs& args, const std::string& echo) {
  const LoadedMatrix lm = sympl::cli::load_matrix(args.file);
  const std::vector<double> d = sympl::symplectic_eigenvalues(lm.a);
  print_values_line("d", d);

  Json rep = base_report("spectrum", echo, 0);
  rep.set("inputs", Json::object().set("a", input_entry(lm)));
  rep.set("payload", Json::object().set("d", Json::numbers(d)));
  rep.set("residuals",
          Json::object().set("max_asymmetry", Json::number(lm.max_asymmetry)));
  rep.set("pass", Json::boolean(true));
  emit(rep);
  return 0;
}

struct DecomposeArgs {
  std::string file;
  double tol = 1e-8;
};

int cmd_decompose(const DecomposeArgs& args, const std::string& echo) {
  const LoadedMatrix lm = sympl::cli::load_matrix(args.file);
  // The library's own residual gate only guards against catastrophic
  // breakdown here; --tol decides acceptance, so ill-conditioned inputs
  // still get their residuals reported instead of an early throw.
  const auto w = sympl::williamson(lm.a, 1e-6);
  const auto srep = sympl::verify_symplectic(w.m);
  const double a_norm = sympl::frobenius_norm(lm.a.mat());
  const double congruence_rel = w.congruence_residual / a_norm;
  const double worst = std::max(w.symplectic_residual, congruence_rel);
  const bool pass = worst <= args.tol;

  const auto evals = sympl::sym_eigenvalues(lm.a, sympl::EigenOrder::ascending);
  const double kappa = evals.back() / evals.front();
  if (kappa > 1e8) {
    std::printf("warning: condition number %s; factors may lose accuracy\n",
                format_short(kappa).c_str());
  }

  print_values_line("d", w.d);
  std::printf("symplectic residual: %s\n", format_short(w.symplectic_residual).c_str());
  std::printf("congruence residual (relative): %s\n",
              format_short(congruence_rel).c_str());
  std::printf("pass: %s\n", pass ? "yes" : "no");

  Json rep = base_report("decompose", echo, 0);
  rep.set("inputs", Json::object().set("a", input_entry(lm)));
  Json payload = Json::object();
  payload.set("d", Json::numbers(w.d));
  payload.set("m", Json::matrix(w.m));
  payload.set("kappa", Json::number(kappa));
  rep.set("payload", std::move(payload));
  Json residuals = Json::object();
  residuals.set("symplectic", Json::number(w.symplectic_residual));
  residuals.set("symplectic_check", Json::number(srep.residual));
  residuals.set("congruence", Json::number(w.congruence_residual));
  residuals.set("congruence_relative", Json::number(congruence_rel));
  residuals.set("eigen_pair", Json::number(w.pair_residual));
  rep.set("residuals", std::move(residuals));
  rep.set("tolerances", Json::object().set("tol", Json::number(args.tol)));
  rep.set("pass", Json::boolean(pass));
  emit(rep);
  return pass ? 0 : 4;
}

struct DderivArgs {
  std::string file_a;
  std::string file_b;
  std::size_t m = 1;
  std::string which = "d";
  bool fd_check = false;
  double fd_tmin = 1e-8;
  double fd_tmax = 0.0;
};

int cmd_dderiv(const DderivArgs& args, const std::string& echo) {
  const LoadedMatrix la = sympl::cli::load_matrix(args.file_a);
  const LoadedMatrix lb = sympl::cli::load_matrix(args.file_b);
  const bool sigma = args.which != "d";
  const std::size_t m = args.m;

  const double value = sigma ? sympl::sigma_dderiv(la.a, lb.a, m)
                             : sympl::d_dderiv(la.a, lb.a, m);
  std::printf("%s(m=%zu): %s\n", sigma ? "sigma_dderiv" : "d_dderiv", m,
              format_short(value).c_str());

  Json rep = base_report("dderiv", echo, 0);
  rep.set("inputs",
          Json::object().set("a", input_entry(la)).set("b", input_entry(lb)));
  Json payload = Json::object();
  payload.set("which", Json::str(sigma ? "sigma" : "d"));
  payload.set("m", Json::integer(static_cast<std::int64_t>(m)));
  payload.set("value", Json::number(value));

  bool pass = true;
  double discrepancy = 0.0;
  if (args.fd_check) {
    const std::function<double(const sympl::SymMatrix&)> f =
        sigma ? std::function<double(const sympl::SymMatrix&)>(
                    [m](const sympl::SymMatrix& x) { return sympl::sigma_m(x, m); })
              : std::function<double(const sympl::SymMatrix&)>(
                    [m](const sympl::SymMatrix& x) {
                      return sympl::symplectic_eigenvalues(x)[m - 1];
                    });
    const auto fd =
        sympl::fd_directional_derivative(f, la.a, lb.a, args.fd_tmin, args.fd_tmax);
    discrepancy = std::fabs(value - fd.estimate);
    pass = discrepancy <= 1e-4;
    std::printf("fd estimate: %s\n", format_short(fd.estimate).c_str());
    std::printf("fd discrepancy: %s\n", format_short(discrepancy).c_str());
    Json fd_json = Json::object();
    fd_json.set("estimate", Json::number(fd.estimate));
    fd_json.set("step_used", Json::number(fd.step_used));
    fd_json.set("error_estimate", Json::number(fd.error_estimate));
    fd_json.set("samples", Json::integer(static_cast<std::int64_t>(fd.samples.size())));
    fd_json.set("discrepancy", Json::number(discrepancy));
    payload.set("fd", std::move(fd_json));
  }
  rep.set("payload", std::move(payload));
  rep.set("tolerances",
          Json::object().set("fd_gate", Json::number(args.fd_check ? 1e-4 : 0.0)));
  rep.set("pass", Json::boolean(pass));
  emit(rep);
  return pass ? 0 : 5;
}

struct SubdiffArgs {
  std::string file_a;
  std::string direction;
  std::size_t m = 1;
  std::size_t count = 8;
  std::uint64_t seed = 0;
};

int cmd_subdiff(const SubdiffArgs& args, const std::string& echo) {
  const LoadedMatrix la = sympl::cli::load_matrix(args.file_a);
  const auto w = sympl::williamson(la.a);

  Json rep = base_report("subdiff", echo, args.seed);
  Json inputs = Json::object().set("a", input_entry(la));
  Json payload = Json::object();
  payload.set("m", Json::integer(static_cast<std::int64_t>(args.m)));
  payload.set("count", Json::integer(static_cast<std::int64_t>(args.count)));
  payload.set("d", Json::numbers(w.d));

  if (!args.direction.empty()) {
    const LoadedMatrix lb = sympl::cli::load_matrix(args.direction);
    inputs.set("direction", input_entry(lb));
    const auto gap =
        sympl::support_gap(w, lb.a, args.m, args.count, args.seed);
    std::printf("support: %s\n", format_short(gap.exact).c_str());
    Json support = Json::object();
    support.set("exact", Json::number(gap.exact));
    if (args.count > 0) {
      const auto sample =
          sympl::clarke_extreme_points(w, args.m, args.count, args.seed);
      std::vector<double> inner(sample.elements.size());
      for (std::size_t k = 0; k < sample.elements.size(); ++k) {
        inner[k] = sympl::frobenius_inner(sample.elements[k].mat(), lb.a.mat());
      }
      print_values_line("inner products", inner);
      std::printf("sampled max: %s\n", format_short(gap.sampled_max).c_str());
      std::printf("gap: %s\n", format_short(gap.gap).c_str());
      support.set("inner_products", Json::numbers(inner));
      support.set("sampled_max", Json::number(gap.sampled_max));
      support.set("gap", Json::number(gap.gap));
    }
    payload.set("support", std::move(support));
  } else {
    const auto sample =
        sympl::clarke_extreme_points(w, args.m, args.count, args.seed);
    std::printf("sampled %zu extreme points of dimension %zu\n",
                sample.elements.size(), la.a.dim());
    Json points = Json::array();
    for (const auto& g : sample.elements) {
      print_matrix(g.mat());
      points.push(Json::matrix(g.mat()));
    }
    payload.set("extreme_points", std::move(points));
  }

  rep.set("inputs", std::move(inputs));
  rep.set("payload", std::move(payload));
  rep.set("pass", Json::boolean(true));
  emit(rep);
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::size_t n = 0;
};

int cmd_verify(const VerifyArgs& args, const std::string& echo) {
  sympl::VerifyOptions opts;
  opts.seed = args.seed;
  opts.trials = args.trials;
  opts.max_n = args.n;

  std::vector<sympl::SuiteResult> results;
  if (args.suite == "williamson") {
    results.push_back(sympl::verify_williamson(opts));
  } else if (args.suite == "derivative") {
    results.push_back(sympl::verify_derivative(opts));
    results.push_back(sympl::verify_gradient(opts));
    results.push_back(sympl::verify_extremal(opts));
  } else if (args.suite == "subdiff") {
    results.push_back(sympl::verify_subdiff(opts));
  } else if (args.suite == "monotonicity") {
    results.push_back(sympl::verify_monotonicity(opts));
  } else if (args.suite == "example1") {
    results.push_back(sympl::verify_example1());
  } else {
    results = sympl::verify_all(opts);
  }

  bool all_pass = true;
  Json suites = Json::array();
  for (const auto& suite : results) {
    all_pass = all_pass && suite.pass;
    std::printf("suite %s: %s (%zu trials)\n", suite.name.c_str(),
                suite.pass ? "PASS" : "FAIL", suite.trials);
    Json metrics = Json::array();
    for (const auto& metric : suite.metrics) {
      std::printf("  %s: worst %s, gate %s, failures %zu\n", metric.name.c_str(),
                  format_short(metric.worst).c_str(),
                  format_short(metric.gate).c_str(), metric.failures);
      Json mj = Json::object();
      mj.set("name", Json::str(metric.name));
      mj.set("worst", Json::number(metric.worst));
      mj.set("gate", Json::number(metric.gate));
      mj.set("failures", Json::integer(static_cast<std::int64_t>(metric.failures)));
      metrics.push(std::move(mj));
    }
    Json sj = Json::object();
    sj.set("name", Json::str(suite.name));
    sj.set("trials", Json::integer(static_cast<std::int64_t>(suite.trials)));
    sj.set("pass", Json::boolean(suite.pass));
    sj.set("metrics", std::move(metrics));
    suites.push(std::move(sj));
  }

  Json example = Json::object();
  bool have_example = false;
  for (const auto& suite : results) {
    if (suite.name != "example1") continue;
    have_example = true;
    const auto witness = sympl::nonconvexity_example();
    const double off = witness.phi_midpoint(0, 1).imag();
    const bool indefinite =
        witness.verdict == "neither negative semidefinite nor positive semidefinite";
    std::printf("midpoint off-diagonal: %si\n", format_short(off).c_str());
    std::printf("verdict: %s\n", indefinite ? "indefinite" : witness.verdict.c_str());
    example.set("midpoint_off_diagonal", Json::number(off));
    example.set("gap_eigenvalues", Json::numbers(witness.gap_eigenvalues));
    example.set("verdict", Json::str(indefinite ? "indefinite" : witness.verdict));
  }

  Json rep = base_report("verify", echo, args.seed);
  rep.set("inputs", Json::object());
  Json payload = Json::object();
  payload.set("suite", Json::str(args.suite));
  payload.set("trials", Json::integer(static_cast<std::int64_t>(args.trials)));
  payload.set("max_n", Json::integer(static_cast<std::int64_t>(args.n)));
  payload.set("suites", std::move(suites));
  if (have_example) payload.set("example1", std::move(example));
  rep.set("payload", std::move(payload));
  rep.set("pass", Json::boolean(all_pass));
  emit(rep);
  return all_pass ? 0 : 1;
}

struct GenArgs {
  std::string spectrum;
  std::uint64_t seed = 0;
  double spread = 0.0;
  std::string out;
};

std::vector<double> parse_spectrum(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<double> d;
  double v = 0.0;
  while (in >> v) d.push_back(v);
  std::string extra;
  if (!in.eof() && in.fail()) {
    in.clear();
    in >> extra;
    throw sympl::ParseError("--spectrum: cannot parse \"" + extra + "\"");
  }
  if (d.empty()) throw sympl::ParseError("--spectrum: no values given");
  return d;
}

int cmd_gen(const GenArgs& args, const std::string& echo) {
  const std::vector<double> d = parse_spectrum(args.spectrum);
  const auto planted = sympl::pd_with_spectrum({d, args.seed, args.spread});
  const std::string text = sympl::cli::render_matrix_file(planted.a.mat());
  sympl::cli::write_matrix_file(args.out, planted.a.mat());

  std::printf("wrote %s (dim %zu)\n", args.out.c_str(), planted.a.dim());
  print_values_line("d", planted.d_sorted);

  Json rep = base_report("gen", echo, args.seed);
  rep.set("inputs", Json::object());
  Json payload = Json::object();
  payload.set("spectrum", Json::numbers(planted.d_sorted));
  payload.set("spread", Json::number(args.spread));
  payload.set("dim", Json::integer(static_cast<std::int64_t>(planted.a.dim())));
  Json output = Json::object();
  output.set("path", Json::str(args.out));
  output.set("digest", Json::str(sympl::cli::fnv1a_hex(text)));
  payload.set("output", std::move(output));
  rep.set("payload", std::move(payload));
  rep.set("pass", Json::boolean(true));
  emit(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symplectic eigenvalues, Williamson decompositions, and"
               " first-order sensitivity"};
  app.require_subcommand(1);
  const std::string echo = make_echo(argc, argv);

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "Symplectic eigenvalues of a matrix");
  spectrum->add_option("matrix", spectrum_args.file, "matrix file")->required();

  DecomposeArgs decompose_args;
  auto* decompose = app.add_subcommand("decompose", "Williamson decomposition");
  decompose->add_option("matrix", decompose_args.file, "matrix file")->required();
  decompose->add_option("--tol", decompose_args.tol,
                        "largest accepted residual (symplectic, relative congruence)");

  DderivArgs dderiv_args;
  auto* dderiv = app.add_subcommand(
      "dderiv", "Directional derivative of a symplectic eigenvalue or sigma_m");
  dderiv->add_option("matrix", dderiv_args.file_a, "base point, positive definite")
      ->required();
  dderiv->add_option("direction", dderiv_args.file_b, "symmetric direction")
      ->required();
  dderiv->add_option("--m", dderiv_args.m, "eigenvalue index, 1-based");
  dderiv
      ->add_option("--which", dderiv_args.which,
                   "d for the eigenvalue, sigma for -2(d_1+...+d_m)")
      ->check(CLI::IsMember({"d", "sigma", "s", "\xcf\x83"}));
  dderiv->add_flag("--fd-check", dderiv_args.fd_check,
                   "compare against the finite-difference oracle");
  dderiv->add_option("--fd-tmin", dderiv_args.fd_tmin,
                     "smallest finite-difference step");
  dderiv->add_option("--fd-tmax", dderiv_args.fd_tmax,
                     "largest finite-difference step (0 = automatic)");

  SubdiffArgs subdiff_args;
  auto* subdiff = app.add_subcommand(
      "subdiff", "Sampled extreme points of the Clarke/Michel-Penot subdifferential");
  subdiff->add_option("matrix", subdiff_args.file_a, "matrix file")->required();
  subdiff->add_option("--m", subdiff_args.m, "eigenvalue index, 1-based");
  subdiff->add_option("--count", subdiff_args.count, "number of sampled points");
  subdiff->add_option("--seed", subdiff_args.seed, "sampling seed");
  subdiff->add_option("--direction", subdiff_args.direction,
                      "direction file: print support value and sampling gap");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Property suites with random trials");
  verify
      ->add_option("--suite", verify_args.suite,
                   "williamson, derivative, subdiff, monotonicity, example1, or all")
      ->check(CLI::IsMember(
          {"williamson", "derivative", "subdiff", "monotonicity", "example1", "all"}));
  verify->add_option("--trials", verify_args.trials, "trials per suite (0 = default)");
  verify->add_option("--seed", verify_args.seed, "base seed for all trials");
  verify->add_option("--n", verify_args.n, "largest half-dimension (0 = default)");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a matrix with a planted spectrum");
  gen->add_option("--spectrum", gen_args.spectrum,
                  "comma-separated symplectic eigenvalues")
      ->required();
  gen->add_option("--seed", gen_args.seed, "frame seed");
  gen->add_option("--spread", gen_args.spread,
                  "symplectic stretching of the planted frame");
  gen->add_option("-o,--output", gen_args.out, "output matrix file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_args, echo);
    if (decompose->parsed()) return cmd_decompose(decompose_args, echo);
    if (dderiv->parsed()) return cmd_dderiv(dderiv_args, echo);
    if (subdiff->parsed()) return cmd_subdiff(subdiff_args, echo);
    if (verify->parsed()) return cmd_verify(verify_args, echo);
    if (gen->parsed()) return cmd_gen(gen_args, echo);
  } catch (const sympl::NotPositiveDefiniteError& e) {
    const std::string what = e.what();
    if (what.find("smallest eigenvalue") == std::string::npos) {
      std::fprintf(stderr, "error: %s (smallest eigenvalue %s)\n", what.c_str(),
                   format_full(e.smallest_eigenvalue()).c_str());
    } else {
      std::fprintf(stderr, "error: %s\n", what.c_str());
    }
    return 3;
  } catch (const sympl::ResidualError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const sympl::FdMismatchError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const sympl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
