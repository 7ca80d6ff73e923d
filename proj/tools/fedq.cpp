// fedq: star products, invariants and property suites from the command line.
//
//   fedq star --chart r2 --order 2 --u "x" --v "p"
//   fedq invariant --example s2-so3 --order 2 [--omega-pert 1] [--out report.json]
//   fedq check associativity --chart s2 --order 3 --seed 7
//
// Exit codes: 0 ok, 2 bad input, 3 a mathematical check failed.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fedq/checks.hpp"
#include "fedq/error.hpp"

using namespace fedq;

namespace {

constexpr int kOk = 0, kInput = 2, kMath = 3, kInternal = 1;

std::vector<Scalar> parse_pert(const std::string& text) {
  std::vector<Scalar> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Scalar::parse(item));
  return out;
}

Conventions parse_conventions(const std::vector<std::string>& toggles) {
  Conventions c;
  for (const auto& t : toggles) c.set(t);
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Polynomial in the chart coordinates, or "@file" for a jet file.
FunctionJet read_jet(const std::string& arg, const Chart& chart, Truncation t) {
  if (!arg.empty() && arg[0] == '@') return FunctionJet::from_json(slurp(arg.substr(1))).truncated(t.order, t.weight);
  return FunctionJet::parse(arg, chart.coords(), t.order, t.weight);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) return;
  std::ofstream f(out);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

struct Common {
  int order = 2;
  std::string omega_pert;
  std::vector<std::string> conventions;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--order", c.order, "λ order K")->check(CLI::Range(1, 6));
  cmd->add_option("--omega-pert", c.omega_pert, "c1,c2,...: Ω = ω + Σ λ^i c_i ω");
  cmd->add_option("--convention", c.conventions, "name=+1 or name=-1")->take_all();
  cmd->add_option("--out", c.out, "output file");
}

int cmd_star(const Common& c, const std::string& chart_src, const std::string& u, const std::string& v) {
  const Truncation t = Truncation::for_order(c.order);
  Conventions conv = parse_conventions(c.conventions);
  Chart chart = load_chart(chart_src, t.weight);
  auto conn = std::make_shared<FedosovConnection>(
      chart, WeylCurvature::scaled_omega(chart.dim(), parse_pert(c.omega_pert), conv), t);
  FedosovStar star(conn);
  FunctionJet r = star(read_jet(u, chart, t), read_jet(v, chart, t));
  std::cout << r.str(chart.coords()) << "\n";
  emit(r.to_json(), c.out);
  return kOk;
}

int cmd_invariant(const Common& c, const std::string& example, bool json) {
  PipelineOptions o;
  o.example = example;
  o.order = c.order;
  o.omega_pert = parse_pert(c.omega_pert);
  o.conventions = parse_conventions(c.conventions);
  InvariantReport r = run_invariant(build_pipeline(o));
  std::cout << (json ? r.json() + "\n" : r.text());
  emit(r.json() + "\n", c.out);
  return kOk;
}

int cmd_check(const Common& c, const std::string& suite, const SuiteOptions& base) {
  SuiteOptions o = base;
  o.order = c.order;
  o.omega_pert = parse_pert(c.omega_pert);
  o.conventions = parse_conventions(c.conventions);
  std::string report;
  bool ok = true;
  for (const auto& r : run_suite(suite, o)) {
    ok = ok && r.pass;
    report += (r.pass ? "PASS " : "FAIL ") + suite + "/" + r.name;
    if (!r.detail.empty()) report += ": " + r.detail;
    report += "\n";
  }
  report += "conventions: " + o.conventions.hash_hex() + ", order " + std::to_string(o.order) + ", seed " +
            std::to_string(o.seed) + "\n";
  std::cout << report;
  emit(report, c.out);
  return ok ? kOk : kMath;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fedosov star products and Casimir invariants"};
  app.require_subcommand(1);

  Common star_c, inv_c, check_c;
  std::string chart = "r2", u, v;
  auto* star = app.add_subcommand("star", "print u * v");
  add_common(star, star_c);
  star->add_option("--chart", chart, "r2, s2 or a chart file");
  star->add_option("--u", u, "polynomial in the chart coordinates, or @jet-file")->required();
  star->add_option("--v", v, "polynomial in the chart coordinates, or @jet-file")->required();

  std::string example = "r2-sl2";
  bool json = false;
  auto* inv = app.add_subcommand("invariant", "evaluate the Casimir invariant c_*");
  add_common(inv, inv_c);
  inv->add_option("--example", example, "r2-sl2 or s2-so3");
  inv->add_flag("--json", json, "print the report as JSON");

  std::string suite;
  SuiteOptions so;
  check_c.order = 3;
  auto* check = app.add_subcommand("check", "run a property suite");
  add_common(check, check_c);
  check->add_option("suite", suite, "associativity, qmm-axioms, gutt-center, hodge, invariance")->required();
  check->add_option("--chart", so.chart, "r2, s2 or a chart file");
  check->add_option("--example", so.example, "r2-sl2 or s2-so3");
  check->add_option("--liealg", so.liealg, "sl2, so3 or a Lie algebra file");
  check->add_option("--seed", so.seed, "generator seed");
  check->add_option("--samples", so.samples, "random samples per property")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*star) return cmd_star(star_c, chart, u, v);
    if (*inv) return cmd_invariant(inv_c, example, json);
    return cmd_check(check_c, suite, so);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const MathError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kMath;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
