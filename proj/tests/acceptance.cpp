// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
// usage: acceptance <papperitz-binary> <papperitz-mutant-binary>

#include <sys/wait.h>

#include <bit>
#include <charconv>
#include <numbers>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "papperitz/equation.hpp"
#include "papperitz/hypergeom.hpp"
#include "papperitz/oracle.hpp"
#include "support.hpp"

using namespace papperitz;
using hypergeom::HypParams;
using papperitz::testing::uniform_complex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double time_limit_s;
  std::function<Outcome()> body;
};

std::string sci(double x) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << x;
  return s.str();
}

// Largest |lhs - rhs| / scale seen so far.
struct Worst {
  double value = 0.0;
  void add(cplx lhs, cplx rhs, double scale) { value = std::max(value, std::abs(lhs - rhs) / scale); }
  void add(double v) { value = std::max(value, v); }
};

struct Process {
  int code;
  std::string out;
};

Process run_process(const std::string& command) {
  Process p{-1, {}};
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return p;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) p.out.append(buf, n);
  const int status = pclose(pipe);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

double parse_exact(const std::string& s) {
  double x = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), x);
  return x;
}

Outcome parameter_identities() {
  std::mt19937_64 rng(1);
  Worst w9, w10, w18;
  for (int k = 0; k < 1000; ++k) {
    const EquationParams p = papperitz::testing::random_params(rng);
    const DerivedParams d = derive_params(p);
    const cplx om = 1.0 - p.a;
    const cplx bp = p.b + kI * p.c;
    const cplx bm = p.b - kI * p.c;
    const cplx l = d.lambda;
    w9.add(l * l - om * l, bp, std::norm(l) + std::abs(om * l) + std::abs(bp));
    w10.add(d.gamma, 2.0 * l + p.a, std::abs(d.gamma) + 2.0 * std::abs(l) + std::abs(p.a));
    w10.add(d.alpha + d.beta, 1.0 + 2.0 * l - p.a,
            std::abs(d.alpha) + std::abs(d.beta) + 1.0 + 2.0 * std::abs(l) + std::abs(p.a));
    w10.add(d.alpha * d.beta, l * l + om * l - bm,
            std::abs(d.alpha * d.beta) + std::norm(l) + std::abs(om * l) + std::abs(bm));
    w18.add(d.delta * d.delta, om * om + 4.0 * bp, std::norm(d.delta) + std::norm(om) + 4.0 * std::abs(bp));
    w18.add(d.delta_star * d.delta_star, om * om + 4.0 * bm,
            std::norm(d.delta_star) + std::norm(om) + 4.0 * std::abs(bm));
  }
  const double tol = 1e-12;
  return {w9.value <= tol && w10.value <= tol && w18.value <= tol,
          "indicial " + sci(w9.value) + ", gauss params " + sci(w10.value) + ", discriminants " + sci(w18.value) +
              " (tol 1e-12)"};
}

Outcome hypergeometric_identities() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> radius(0.0, 0.6);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  Worst sym, euler, pfaff, deriv;
  int draws = 0;
  while (draws < 200) {
    const cplx g = uniform_complex(rng, -2.0, 2.0);
    // Valid draws keep gamma 0.25 away from the poles of (gamma)_n.
    if (g.real() < 0.25 && std::abs(g - std::round(g.real())) < 0.25) continue;
    const cplx a = uniform_complex(rng, -2.0, 2.0);
    const cplx b = uniform_complex(rng, -2.0, 2.0);
    const cplx t = std::polar(radius(rng), angle(rng));
    ++draws;
    const HypParams p(a, b, g);
    const cplx f = hypergeom::gauss_2f1(p, t);
    sym.add(rel_diff(f, hypergeom::gauss_2f1(HypParams(b, a, g), t)));
    euler.add(rel_diff(f, mobius::principal_power(1.0 - t, g - a - b) * hypergeom::gauss_2f1(HypParams(g - a, g - b, g), t)));
    pfaff.add(rel_diff(f, mobius::principal_power(1.0 - t, -b) * hypergeom::gauss_2f1(HypParams(g - a, b, g), t / (t - 1.0))));
    const double h = 1e-6;
    const cplx fd = (hypergeom::gauss_2f1(p, t + h) - hypergeom::gauss_2f1(p, t - h)) / (2.0 * h);
    deriv.add(rel_diff(hypergeom::gauss_2f1_derivative(p, t), fd));
  }
  return {sym.value <= 1e-12 && euler.value <= 1e-12 && pfaff.value <= 1e-12 && deriv.value <= 1e-6,
          "symmetry " + sci(sym.value) + ", Euler " + sci(euler.value) + ", Pfaff " + sci(pfaff.value) +
              " (tol 1e-12); derivative " + sci(deriv.value) + " (tol 1e-6)"};
}

Outcome closed_form_residuals() {
  std::mt19937_64 rng(3);
  Worst worst;
  int points = 0;
  for (int k = 0; k < 200; ++k) {
    const DerivedParams d = papperitz::testing::random_generic(rng);
    for (const auto& bp : papperitz::testing::basis_points(d, rng, 20)) {
      worst.add(papperitz::testing::scaled_residual(d.params, bp.first, bp.z));
      worst.add(papperitz::testing::scaled_residual(d.params, bp.second, bp.z));
      ++points;
    }
  }
  return {worst.value <= 1e-8, std::to_string(points) + " points, worst scaled residual " + sci(worst.value) +
                                   " (tol 1e-8)"};
}

Outcome oracle_agreement() {
  std::mt19937_64 rng(4);
  const oracle::PathSpec path{{2.0 * kI, cplx(1.0, 2.0), cplx(2.0, 2.0)}};
  Worst worst;
  for (int k = 0; k < 20; ++k) {
    const DerivedParams d = papperitz::testing::random_generic(rng);
    worst.add(oracle::compare_closed_numeric(d, 1.0, 0.0, path).max_rel_err);
    worst.add(oracle::compare_closed_numeric(d, 0.0, 1.0, path).max_rel_err);
  }
  return {worst.value <= 1e-6, "worst waypoint rel err " + sci(worst.value) + " (tol 1e-6)"};
}

Outcome elementary_solutions() {
  // (i) a = b = c = 0: y1 = (z - i)/(2i)
  const DerivedParams d0 = derive_params({0.0, 0.0, 0.0});
  Worst second_diff, linear;
  for (cplx origin : {cplx(-3.0, 0.5), cplx(-2.0, -2.5), cplx(-3.0, 2.0)}) {
    std::vector<cplx> ys;
    for (int k = 0; k <= 20; ++k) {
      const cplx z = origin + 0.3 * k;
      ys.push_back(eval_basis(d0, Basis::First, z).y);
      linear.add(std::abs(eval_solution(d0, 2.0 * kI, 0.0, z).y - (z - kI)));
    }
    for (std::size_t k = 1; k + 1 < ys.size(); ++k) second_diff.add(std::abs(ys[k + 1] - 2.0 * ys[k] + ys[k - 1]));
  }
  // (ii) a = 0.5, b = c = 0: y2 = 1
  const DerivedParams dh = derive_params({0.5, 0.0, 0.0});
  Worst constant;
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const cplx z = uniform_complex(rng, -3.0, 3.0);
    if (std::abs(z + kI) < 0.1) continue;
    constant.add(std::abs(eval_basis(dh, Basis::Second, z).y - 1.0));
  }
  // (iii) b = p^2, c = ip(a-1): ((z+i)/(z-i))^p
  Worst family;
  for (double a : {0.0, 0.3}) {
    for (double pw : {0.5, 1.0, 1.5}) {
      const EquationParams p{a, pw * pw, kI * pw * (a - 1.0)};
      for (cplx z : {cplx(2.0, 0.5), cplx(-1.0, 3.0), cplx(0.4, -2.0), cplx(-2.5, -0.3)}) {
        const cplx y = std::pow((z + kI) / (z - kI), pw);
        const cplx q = 1.0 + z * z;
        const cplx l = -2.0 * kI * pw / q;
        const ZJet jet{y, y * l, y * (l * l + 4.0 * kI * pw * z / (q * q))};
        family.add(papperitz::testing::scaled_residual(p, jet, z));
      }
    }
  }
  return {second_diff.value <= 1e-10 && linear.value <= 1e-10 && constant.value <= 1e-14 && family.value <= 1e-10,
          "(i) 2nd diff " + sci(second_diff.value) + ", z-i " + sci(linear.value) + " (tol 1e-10); (ii) " +
              sci(constant.value) + " (tol 1e-14); (iii) " + sci(family.value) + " (tol 1e-10)"};
}

Outcome kamke_case() {
  std::mt19937_64 rng(6);
  Worst worst;
  for (auto [A, B] : {std::pair{1.0, 1.0}, std::pair{3.0, -2.0}}) {
    const DerivedParams d = derive_params({A / 2.0, B / 4.0, 0.0});
    if (d.degeneracy != DegeneracyClass::Generic) return {false, "unexpected degeneracy"};
    for (const auto& bp : papperitz::testing::basis_points(d, rng, 10)) {
      for (const ZJet& j : {bp.first, bp.second}) {
        const cplx z = bp.z;
        const cplx q = 1.0 + z * z;
        const cplx kamke = q * q * j.d2y + A * z * q * j.dy + B * j.y;
        worst.add(std::abs(kamke) / oracle::residual_scale(j, z));
      }
    }
  }
  return {worst.value <= 1e-8, "worst scaled residual " + sci(worst.value) + " (tol 1e-8)"};
}

Outcome degeneracy_detection() {
  const bool repeated = derive_params({0.0, -0.25, 0.0}).degeneracy == DegeneracyClass::RepeatedExponent;
  const DerivedParams d0 = derive_params({0.0, 0.0, 0.0});
  bool escape = false;
  try {
    const HypParams second(d0.alpha - d0.gamma + 1.0, d0.beta - d0.gamma + 1.0, 2.0 - d0.gamma);
    escape = d0.degeneracy == DegeneracyClass::Generic && second.gamma() == cplx(0.0, 0.0) &&
             eval_basis(d0, Basis::Second, cplx(0.7, 1.9)).y == cplx(1.0, 0.0);
  } catch (const Error&) {
  }
  bool wronskian = false;
  try {
    fit_ivp(derive_params({0.0, -0.25, 0.0}), 2.0 * kI, 1.0, 0.0);
  } catch (const Error& e) {
    wronskian = e.kind() == ErrorKind::DegenerateWronskian;
  }
  return {repeated && escape && wronskian, std::string("RepeatedExponent ") + (repeated ? "yes" : "no") +
                                               ", 2-gamma=0 escape " + (escape ? "yes" : "no") +
                                               ", DegenerateWronskian " + (wronskian ? "yes" : "no")};
}

Outcome cli_contract(const std::string& tool, const std::string& mutant) {
  std::ostringstream detail;
  bool pass = true;
  const auto expect = [&](const std::string& args, int code) {
    const Process p = run_process(tool + " " + args);
    if (p.code != code) {
      pass = false;
      detail << "[" << args << " -> " << p.code << ", expected " << code << "] ";
    }
  };
  expect("params --a 0,0 --b 0,0 --c 0,0", 0);
  expect("params --a 0 --b 0,0 --c 0,0", 1);
  expect("verify --a 0,0 --b -0.25,0 --c 0,0", 2);
  expect("eval --a 0,0 --b 0,0 --c 0,0 --z 0,-1", 3);
  expect("integrate --a 0,0 --b 0,0 --c 0,0 --path '0,0.95;0,1.05'", 3);
  expect("verify --a 1,0 --b 0,0 --c 1,0 --tol 1e-30", 4);
  detail << "exit codes 0-4 " << (pass ? "ok" : "MISMATCH");

  const auto start = std::chrono::steady_clock::now();
  const Process full = run_process(tool + " selftest --seed 20051008");
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool selftest_ok = full.code == 0 && seconds < 120.0;
  detail << "; selftest exit " << full.code << " in " << sci(seconds) << " s (limit 120 s)";

  const bool mutant_ok = run_process(mutant + " selftest --quick").code == 4;
  detail << "; mutant selftest " << (mutant_ok ? "rejected" : "NOT rejected");

  const auto points = std::filesystem::temp_directory_path() / "papperitz_acceptance_points.csv";
  std::ofstream(points) << "3,0\n0.25,1.75\n-1.5,2.5\n3,-2\n";
  const std::string eval = tool + " eval --a 0.3,-0.4 --b 1.2,0.5 --c -0.7,0.2 --c1 1,0.5 --c2 -0.25,2 --points " +
                           points.string() + " --format ";
  const Process csv = run_process(eval + "csv");
  const Process json = run_process(eval + "json");
  std::filesystem::remove(points);
  bool bit_exact = csv.code == 0 && json.code == 0;
  if (bit_exact) {
    const auto rows = nlohmann::json::parse(json.out)["rows"];
    std::istringstream lines(csv.out);
    std::string line;
    std::getline(lines, line);
    std::size_t k = 0;
    while (std::getline(lines, line)) {
      std::vector<double> cells;
      std::istringstream cs(line);
      std::string cell;
      while (std::getline(cs, cell, ',')) cells.push_back(parse_exact(cell));
      const std::vector<double> ref = {rows[k]["z"][0],  rows[k]["z"][1],  rows[k]["y"][0],       rows[k]["y"][1],
                                       rows[k]["dy"][0], rows[k]["dy"][1], rows[k]["residual_abs"]};
      for (std::size_t c = 0; c < ref.size(); ++c) {
        bit_exact = bit_exact && cells.size() == ref.size() &&
                    std::bit_cast<std::uint64_t>(cells[c]) == std::bit_cast<std::uint64_t>(ref[c]);
      }
      ++k;
    }
    bit_exact = bit_exact && k == rows.size() && k == 4;
  }
  detail << "; CSV/JSON " << (bit_exact ? "bit-exact" : "MISMATCH");
  return {pass && selftest_ok && mutant_ok && bit_exact, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <papperitz> <papperitz_mutant>\n";
    return 2;
  }
  const std::string tool = argv[1];
  const std::string mutant = argv[2];

  const std::vector<Criterion> criteria = {
      {"1", "parameter identities, 1000 draws", 1.0, parameter_identities},
      {"2", "hypergeometric identities, 200 draws", 10.0, hypergeometric_identities},
      {"3", "closed-form residuals, 200 draws x 20 points", 30.0, closed_form_residuals},
      {"4", "oracle agreement, 20 draws on 2i -> 1+2i -> 2+2i", 30.0, oracle_agreement},
      {"5", "elementary solutions", 0.0, elementary_solutions},
      {"6", "Kamke special case", 0.0, kamke_case},
      {"7", "degeneracy detection", 0.0, degeneracy_detection},
      {"8", "CLI contract", 0.0, [&] { return cli_contract(tool, mutant); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = sci(seconds) + " s";
    if (c.time_limit_s > 0.0) {
      timing += " (limit " + sci(c.time_limit_s) + " s)";
      if (seconds >= c.time_limit_s) o.pass = false;
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.title << " | " << o.detail
              << " | " << timing << std::endl;
    failures += !o.pass;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
