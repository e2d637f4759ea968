#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "format.hpp"
#include "papperitz/equation.hpp"
#include "papperitz/error.hpp"
#include "papperitz/oracle.hpp"
#include "selftest.hpp"

namespace papperitz::cli {

namespace {

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
      return kExitUsage;
    case ErrorKind::InvalidGamma:
    case ErrorKind::DegenerateGamma:
    case ErrorKind::DegenerateBasis:
    case ErrorKind::DegenerateWronskian:
      return kExitDegenerate;
    case ErrorKind::NoConvergence:
    case ErrorKind::EvaluationUnreachable:
    case ErrorKind::OnBranchCut:
    case ErrorKind::PoleAtMinusI:
    case ErrorKind::PoleAtOne:
    case ErrorKind::ZeroBaseNonpositiveExponent:
    case ErrorKind::StepLimitExceeded:
    case ErrorKind::PathTooCloseToSingularity:
      return kExitUnreachable;
  }
  return kExitUsage;
}

struct EquationArgs {
  std::string a = "0,0";
  std::string b = "0,0";
  std::string c = "0,0";

  void attach(CLI::App& app) {
    app.add_option("--a", a, "coefficient a as RE,IM")->required();
    app.add_option("--b", b, "coefficient b as RE,IM")->required();
    app.add_option("--c", c, "coefficient c as RE,IM")->required();
  }

  EquationParams parse() const { return {parse_complex(a), parse_complex(b), parse_complex(c)}; }
};

std::vector<cplx> read_points(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open points file '" + file + "'");
  std::vector<cplx> points;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const bool header = first && line.rfind("z_re", 0) == 0;
    first = false;
    if (line.empty() || line.front() == '#' || header) continue;
    points.push_back(parse_complex(line));
  }
  return points;
}

std::string output_row_text(const std::vector<OutputRow>& rows, const std::string& format, const EquationParams& p,
                            const DerivedParams& d, const nlohmann::json& extra) {
  if (format == "csv") return render_csv(rows);
  nlohmann::json params = to_json(p);
  params.update(extra);
  nlohmann::json doc{{"params", params}, {"derived", to_json(d)}, {"rows", nlohmann::json::array()}};
  for (const auto& r : rows) doc["rows"].push_back(to_json(r));
  return doc.dump(2) + "\n";
}

int cmd_params(const EquationArgs& eq, bool json, std::ostream& out) {
  const EquationParams p = eq.parse();
  const DerivedParams d = derive_params(p);
  if (json) {
    out << nlohmann::json{{"params", to_json(p)}, {"derived", to_json(d)}}.dump(2) << "\n";
    return kExitOk;
  }
  out << "delta       " << render_complex(d.delta) << "\n"
      << "delta_star  " << render_complex(d.delta_star) << "\n"
      << "lambda      " << render_complex(d.lambda) << "\n"
      << "lambda2     " << render_complex(d.lambda2) << "\n"
      << "alpha       " << render_complex(d.alpha) << "\n"
      << "beta        " << render_complex(d.beta) << "\n"
      << "gamma       " << render_complex(d.gamma) << "\n"
      << "degeneracy  " << to_string(d.degeneracy) << "\n";
  return kExitOk;
}

struct EvalArgs {
  std::string c1 = "1,0";
  std::string c2 = "0,0";
  std::string z;
  std::string points;
  std::string format = "csv";
};

int cmd_eval(const EquationArgs& eq, const EvalArgs& args, std::ostream& out) {
  const EquationParams p = eq.parse();
  const cplx c1 = parse_complex(args.c1);
  const cplx c2 = parse_complex(args.c2);
  const std::vector<cplx> zs = args.points.empty() ? std::vector<cplx>{parse_complex(args.z)} : read_points(args.points);

  const DerivedParams d = derive_params(p);
  std::vector<OutputRow> rows;
  for (cplx z : zs) {
    const ZJet jet = eval_solution(d, c1, c2, z);
    rows.push_back({z, jet.y, jet.dy, std::abs(oracle::residual_z(p, jet, z))});
  }
  out << output_row_text(rows, args.format, p, d, {{"c1", to_json(c1)}, {"c2", to_json(c2)}});
  return kExitOk;
}

struct VerifyArgs {
  int samples = 20;
  double tol = 1e-8;
  std::uint64_t seed = 1;
};

// Waypoints are drawn from the box [-2,2] x [1.5,3]: every segment between them
// stays at least 0.5 away from z = i and the Moebius image keeps |t| < 0.65.
int cmd_verify(const EquationArgs& eq, const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const EquationParams p = eq.parse();
  const DerivedParams d = derive_params(p);
  if (d.degeneracy != DegeneracyClass::Generic) {
    err << "degenerate parameters (" << to_string(d.degeneracy) << "): the closed-form basis is incomplete\n";
    return kExitDegenerate;
  }
  std::mt19937_64 rng(args.seed);
  std::uniform_real_distribution<double> re(-2.0, 2.0);
  std::uniform_real_distribution<double> im(1.5, 3.0);
  oracle::PathSpec path{{2.0 * kI}};
  for (int k = 0; k < args.samples; ++k) {
    const double x = re(rng);
    path.waypoints.push_back({x, im(rng)});
  }

  double max_residual = 0.0;
  for (cplx z : path.waypoints) {
    for (Basis which : {Basis::First, Basis::Second}) {
      const ZJet jet = eval_basis(d, which, z);
      max_residual = std::max(max_residual, std::abs(oracle::residual_z(p, jet, z)) / oracle::residual_scale(jet, z));
    }
  }
  const oracle::VerifyReport report =
      oracle::compare_closed_numeric(d, 1.0, 1.0, path, oracle::IntegrationControl{1e-12, 1e-14, 1'000'000});

  const bool pass = max_residual <= args.tol && report.max_rel_err <= args.tol;
  out << "samples        " << args.samples << "\n"
      << "seed           " << args.seed << "\n"
      << "max_residual   " << render_double(max_residual) << "\n"
      << "max_abs_err    " << render_double(report.max_abs_err) << "\n"
      << "max_rel_err    " << render_double(report.max_rel_err) << "\n"
      << "tol            " << render_double(args.tol) << "\n"
      << "result         " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitVerifyFailed;
}

struct IntegrateArgs {
  std::string path;
  std::string y0 = "1,0";
  std::string dy0 = "0,0";
  std::string out = "csv";
};

int cmd_integrate(const EquationArgs& eq, const IntegrateArgs& args, std::ostream& out) {
  const EquationParams p = eq.parse();
  const cplx y0 = parse_complex(args.y0);
  const cplx dy0 = parse_complex(args.dy0);
  const oracle::PathSpec path{parse_path(args.path)};
  const auto samples = oracle::integrate_ivp(p, path, y0, dy0);
  std::vector<OutputRow> rows;
  for (const auto& s : samples) {
    const ZJet jet{s.y, s.dy, oracle::second_derivative(p, s.z, s.y, s.dy)};
    rows.push_back({s.z, s.y, s.dy, std::abs(oracle::residual_z(p, jet, s.z))});
  }
  out << output_row_text(rows, args.out, p, derive_params(p), {{"y0", to_json(y0)}, {"dy0", to_json(dy0)}});
  return kExitOk;
}

int cmd_selftest(std::uint64_t seed, bool quick, std::ostream& out) {
  const auto results = run_selftest(seed, quick);
  bool pass = true;
  for (const auto& r : results) {
    out << (r.ok() ? "PASS " : "FAIL ") << r.name << " " << r.passed << "/" << r.total << "\n";
    pass = pass && r.ok();
  }
  out << (pass ? "selftest passed" : "selftest FAILED") << "\n";
  return pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form solutions of (1+z^2)^2 y'' + 2az(1+z^2) y' + 4(b+cz) y = 0", "papperitz"};
  app.require_subcommand(1);

  EquationArgs params_eq;
  bool params_json = false;
  auto* params = app.add_subcommand("params", "derive exponents and hypergeometric parameters");
  params_eq.attach(*params);
  params->add_flag("--json", params_json, "print JSON instead of text");

  EquationArgs eval_eq;
  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "evaluate C1 y1 + C2 y2 and its derivative");
  eval_eq.attach(*eval);
  eval->add_option("--c1", eval_args.c1, "coefficient of the first basis member")->capture_default_str();
  eval->add_option("--c2", eval_args.c2, "coefficient of the second basis member")->capture_default_str();
  auto* z_opt = eval->add_option("--z", eval_args.z, "evaluation point RE,IM");
  auto* points_opt = eval->add_option("--points", eval_args.points, "file with one RE,IM point per line");
  z_opt->excludes(points_opt);
  eval->add_option("--format", eval_args.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  EquationArgs verify_eq;
  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "check the closed form against residuals and numeric integration");
  verify_eq.attach(*verify);
  verify->add_option("--samples", verify_args.samples)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--tol", verify_args.tol)->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_option("--seed", verify_args.seed)->capture_default_str();

  EquationArgs integrate_eq;
  IntegrateArgs integrate_args;
  auto* integrate = app.add_subcommand("integrate", "integrate the equation numerically along a polyline");
  integrate_eq.attach(*integrate);
  integrate->add_option("--path", integrate_args.path, "waypoints \"RE,IM;RE,IM;...\"")->required();
  integrate->add_option("--y0", integrate_args.y0)->capture_default_str();
  integrate->add_option("--dy0", integrate_args.dy0)->capture_default_str();
  integrate->add_option("--out", integrate_args.out)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  std::uint64_t selftest_seed = 20051008;
  bool selftest_quick = false;
  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
  selftest->add_option("--seed", selftest_seed)->capture_default_str();
  selftest->add_flag("--quick", selftest_quick, "reduced sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*params) return cmd_params(params_eq, params_json, out);
    if (*eval) {
      if (eval_args.z.empty() && eval_args.points.empty()) {
        err << "eval: one of --z or --points is required\n";
        return kExitUsage;
      }
      return cmd_eval(eval_eq, eval_args, out);
    }
    if (*verify) return cmd_verify(verify_eq, verify_args, out, err);
    if (*integrate) return cmd_integrate(integrate_eq, integrate_args, out);
    if (*selftest) return cmd_selftest(selftest_seed, selftest_quick, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kExitUsage;
}

}  // namespace papperitz::cli
