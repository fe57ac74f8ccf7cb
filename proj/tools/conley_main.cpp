#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "../vendor/CLI11.hpp"
#include "../vendor/json.hpp"
#include "conley/conley.h"

namespace {

using nlohmann::json;

int fail(conley_status st) {
  json err{{"error", conley_last_error_name()}, {"message", conley_last_error()}};
  if (st == CONLEY_REFINE) err["hint"] = "increase --depth";
  std::cerr << err.dump(2) << "\n";
  return st == CONLEY_REFINE ? 1 : 2;
}

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << json{{"error", "IO"}, {"message", "cannot write " + out_path}}.dump(2)
              << "\n";
    return 2;
  }
  out << text;
  return 0;
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path);
  if (!in) {
    ok = false;
    return {};
  }
  ok = true;
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

struct Handle {
  conley_system* sys = nullptr;
  ~Handle() { conley_system_free(sys); }
};

struct Str {
  char* s = nullptr;
  ~Str() { conley_string_free(s); }
};

int open_system(const std::string& path, long long budget, Handle& h) {
  conley_status st = conley_system_from_file(path.c_str(), &h.sys);
  if (st != CONLEY_OK) return fail(st);
  if (budget > 0) conley_set_budgets(h.sys, budget, 0);
  return 0;
}

// Exit 1 when the report carries poset-mode defect witnesses.
int defect_exit(const std::string& report) {
  auto j = json::parse(report, nullptr, false);
  if (!j.is_discarded() && j.contains("filtration") &&
      !j["filtration"]["defects"].empty())
    return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Conley index of sampled and combinatorial systems"};
  app.require_subcommand(1);

  std::string system_path, mode = "chain", out_path, dot_path;
  int depth = -1;
  double padding = -1.0;
  long long budget = 0;
  unsigned long seed = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_system) {
    auto* opt = cmd->add_option("--system", system_path, "System JSON file");
    if (needs_system) opt->required();
    cmd->add_option("--depth", depth, "Subdivision depth (2^depth boxes per axis)");
    cmd->add_option("--padding", padding, "Per-axis image padding");
    cmd->add_option("--out", out_path, "Output file (default stdout)");
    cmd->add_option("--seed", seed, "Reserved for reproducibility; unused by the core");
    cmd->add_option("--budget", budget, "Box-enumeration budget");
  };

  auto* analyze = app.add_subcommand("analyze", "Full index pipeline report");
  add_common(analyze, true);
  analyze->add_option("--mode", mode, "Filtration mode: chain or poset")
      ->check(CLI::IsMember({"chain", "poset"}));
  analyze->add_option("--dot", dot_path, "Also write the Morse graph DOT here");

  auto* morse = app.add_subcommand("morse", "Morse graph and Morse set filtration");
  add_common(morse, true);
  morse->add_option("--mode", mode, "Filtration mode: chain or poset")
      ->check(CLI::IsMember({"chain", "poset"}));
  morse->add_option("--dot", dot_path, "Write the Morse graph DOT here");

  auto* pair = app.add_subcommand("pair", "Filtration pair and quotient digraph");
  add_common(pair, true);

  auto* invariant = app.add_subcommand("invariant", "Maximal invariant set");
  add_common(invariant, true);

  auto* cont = app.add_subcommand("continue", "Continuation under a perturbation");
  add_common(cont, true);
  std::vector<double> perturb;
  cont->add_option("--perturb", perturb, "Per-axis translation of the image")
      ->required();

  auto* shifteq = app.add_subcommand("shifteq", "Shift-equivalence verdict");
  std::string a_path, b_path;
  shifteq->add_option("a", a_path, "Matrix JSON A")->required();
  shifteq->add_option("b", b_path, "Matrix JSON B")->required();
  shifteq->add_option("--out", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (shifteq->parsed()) {
    bool ok_a = false, ok_b = false;
    std::string a_text = read_file(a_path, ok_a), b_text = read_file(b_path, ok_b);
    if (!ok_a || !ok_b) {
      std::cerr << json{{"error", "IO"}, {"message", "cannot read matrix file"}}.dump(2)
                << "\n";
      return 2;
    }
    Str verdict;
    conley_status st = conley_shifteq(a_text.c_str(), b_text.c_str(), &verdict.s);
    if (st != CONLEY_OK) return fail(st);
    return emit(verdict.s, out_path);
  }

  Handle h;
  if (int rc = open_system(system_path, budget, h)) return rc;

  if (analyze->parsed() || morse->parsed()) {
    Str report, dot;
    conley_status st =
        analyze->parsed()
            ? conley_analyze(h.sys, depth, padding, mode.c_str(), &report.s)
            : conley_morse(h.sys, depth, padding, mode.c_str(), &report.s, &dot.s);
    if (st != CONLEY_OK) return fail(st);
    if (morse->parsed() && dot_path.empty() && !dot.s) dot_path.clear();
    if (!dot_path.empty()) {
      Str d2;
      if (!dot.s) {
        conley_status st2 = conley_morse(h.sys, depth, padding, mode.c_str(),
                                         nullptr, &d2.s);
        if (st2 != CONLEY_OK) return fail(st2);
      }
      std::ofstream dout(dot_path);
      if (!dout) {
        std::cerr << json{{"error", "IO"},
                          {"message", "cannot write " + dot_path}}.dump(2)
                  << "\n";
        return 2;
      }
      dout << (dot.s ? dot.s : d2.s);
    }
    if (int rc = emit(report.s, out_path)) return rc;
    return defect_exit(report.s);
  }

  if (pair->parsed()) {
    Str out;
    conley_status st = conley_pair(h.sys, depth, padding, &out.s);
    if (st != CONLEY_OK) return fail(st);
    return emit(out.s, out_path);
  }

  if (invariant->parsed()) {
    Str out;
    conley_status st = conley_invariant(h.sys, depth, padding, &out.s);
    if (st != CONLEY_OK) return fail(st);
    return emit(out.s, out_path);
  }

  if (cont->parsed()) {
    Str out;
    conley_status st = conley_continue(h.sys, perturb.data(),
                                       static_cast<int>(perturb.size()), depth,
                                       padding, &out.s);
    if (st != CONLEY_OK) return fail(st);
    int rc = emit(out.s, out_path);
    if (rc) return rc;
    auto j = json::parse(std::string(out.s), nullptr, false);
    if (!j.is_discarded() && j.contains("pair_valid") && !j["pair_valid"].get<bool>())
      return 1;
    return 0;
  }

  return 2;
}
