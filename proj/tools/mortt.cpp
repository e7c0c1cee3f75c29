#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mortt/checker.hpp"
#include "mortt/figures.hpp"
#include "mortt/model.hpp"
#include "mortt/properties.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

bool use_color() {
  const char* c = std::getenv("MORTT_COLOR");
  if (!c) return false;
  return std::string(c) == "1";
}

std::string paint(const std::string& s, const char* code) {
  if (!use_color()) return s;
  return std::string("\033[") + code + "m" + s + "\033[0m";
}

std::string green(const std::string& s) { return paint(s, "32"); }
std::string red(const std::string& s) { return paint(s, "31"); }

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_report(const std::string& path, const std::string& body) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  f << body;
}

mortt::Structure bindings_from_file(const std::string& path) {
  mortt::Structure rho;
  if (path.empty()) return rho;
  auto e = mortt::parse_sexpr(slurp(path));
  if (!e.head_is("bindings")) throw mortt::ParseError("(bindings ...) expected", e.line, e.col);
  for (size_t i = 1; i < e.size(); i++) {
    const auto& it = e[i];
    if (!it.is_list() || it.size() != 2 || !it[0].is_atom)
      throw mortt::ParseError("(var value) binding expected", it.line, it.col);
    rho[it[0].atom] = mortt::value_from_sexpr(it[1]);
  }
  return rho;
}

int cmd_check(const std::string& proof_path, const std::string& report_path) {
  auto script = mortt::parse_proof(slurp(proof_path));
  auto rep = mortt::check_script(script);
  std::ostringstream out;
  for (auto& s : rep.steps) {
    const char* st = s.state == mortt::StepState::Ok
                         ? "ok"
                         : (s.state == mortt::StepState::Failed ? "failed" : "skipped");
    out << "step " << s.id << " " << st;
    if (!s.message.empty()) out << " : " << s.message;
    out << "\n";
  }
  out << (rep.accepted ? "accepted" : "rejected") << " " << proof_path << "\n";
  std::cout << (rep.accepted ? green("accepted") : red("rejected")) << " " << proof_path << "\n";
  if (!rep.accepted) std::cout << "  " << rep.first_failure << "\n";
  write_report(report_path, out.str());
  return rep.accepted ? kExitOk : kExitRejected;
}

int cmd_eval(const std::string& expr_path, const std::string& model_path,
             const std::string& bindings_path, const std::string& report_path) {
  auto expr = mortt::parse_expr(slurp(expr_path));
  mortt::Evaluator ev(mortt::parse_model(slurp(model_path)));
  mortt::Structure rho = bindings_from_file(bindings_path);
  auto r = ev.eval(expr, rho);
  std::ostringstream out;
  switch (r.st) {
    case mortt::EvalStatus::Value: out << "value " << mortt::print_value(r.v) << "\n"; break;
    case mortt::EvalStatus::Undef: out << "undefined : " << r.why << "\n"; break;
    case mortt::EvalStatus::Unsupported: out << "unsupported : " << r.why << "\n"; break;
  }
  std::cout << out.str();
  write_report(report_path, out.str());
  return r.ok() ? kExitOk : kExitRejected;
}

int cmd_entails(const std::string& seq_path, const std::string& model_path,
                const std::string& report_path) {
  auto seq = mortt::parse_sequent(slurp(seq_path));
  mortt::Evaluator ev(mortt::parse_model(slurp(model_path)));
  if (seq.jk != mortt::JudgeKind::Formula) {
    std::cerr << "entails expects a (holds ...) sequent\n";
    return kExitUsage;
  }
  auto o = ev.entails(seq.ctx, seq.e);
  std::ostringstream out;
  if (o.st == mortt::Outcome::St::Unsupported) out << "unsupported : " << o.why << "\n";
  else out << (o.yes() ? "entailed" : "not entailed : " + o.why) << "\n";
  std::cout << out.str();
  write_report(report_path, out.str());
  return o.yes() ? kExitOk : kExitRejected;
}

int cmd_validate(const std::string& proof_path, const std::string& model_path,
                 const std::string& report_path) {
  auto script = mortt::parse_proof(slurp(proof_path));
  auto chk = mortt::check_script(script);
  if (!chk.accepted) {
    std::cout << red("rejected") << " by the checker; nothing to validate\n";
    return kExitRejected;
  }
  mortt::Evaluator ev(mortt::parse_model(slurp(model_path)));
  std::ostringstream out;
  bool all = true;
  for (auto& st : script.steps) {
    std::string verdict, detail;
    if (st.rule.rfind("NAT.", 0) == 0 || st.rule == "PC.infinity" ||
        mortt::Evaluator::has_natural_map(st.claim)) {
      verdict = "not-model-checkable";
      detail = st.rule.rfind("NAT.", 0) == 0 || mortt::Evaluator::has_natural_map(st.claim)
                   ? "natural maps have no semantic clause"
                   : "the axiom of infinity has no finite model";
    } else {
      auto r = ev.validate(st.claim);
      switch (r.st) {
        case mortt::Validation::Pass: verdict = "pass"; break;
        case mortt::Validation::Fail: verdict = "FAIL"; all = false; break;
        case mortt::Validation::NotCheckable: verdict = "not-model-checkable"; break;
        case mortt::Validation::Unsupported: verdict = "unsupported"; all = false; break;
      }
      detail = r.detail;
    }
    out << "step " << st.id << " " << verdict;
    if (!detail.empty()) out << " : " << detail;
    out << "\n";
  }
  out << (all ? "validated" : "validation failed") << " " << proof_path << "\n";
  std::cout << (all ? green("validated") : red("validation failed")) << " " << proof_path << "\n";
  if (!all) std::cout << out.str();
  write_report(report_path, out.str());
  return all ? kExitOk : kExitRejected;
}

int cmd_props(const std::vector<std::string>& selection, uint64_t seed, int iters,
              const std::string& bounds_path, const std::string& report_path) {
  mortt::GenBounds bounds;
  if (!bounds_path.empty()) {
    auto cfg = mortt::parse_model(slurp(bounds_path));
    bounds.alphabet = (int)cfg.alphabet.size();
    bounds.max_card = cfg.max_card;
    bounds.max_depth = cfg.max_rank;
  }
  auto rep = mortt::run_properties(selection, seed, iters, bounds);
  std::ostringstream out;
  for (auto& r : rep.results) {
    out << "prop " << r.name << " " << (r.passed ? "pass" : "fail") << " iters="
        << r.iterations << " seed=" << seed;
    if (!r.passed) out << " counterexample=\n" << r.counterexample;
    out << "\n";
  }
  std::cout << out.str();
  std::cout << (rep.all_passed() ? green("all properties passed")
                                 : red("property failures detected"))
            << "\n";
  write_report(report_path, out.str());
  return rep.all_passed() ? kExitOk : kExitRejected;
}

int cmd_examples(const std::string& name, const std::string& report_path) {
  if (name != "fig-examples") {
    std::cerr << "unknown example '" << name << "' (available: fig-examples)\n";
    return kExitUsage;
  }
  std::string out = mortt::figures::render_tables();
  std::cout << out;
  write_report(report_path, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mortt: a verification kernel for morphoid type theory"};
  app.require_subcommand(1);
  std::string report_path;
  app.add_option("--report", report_path, "write a machine-readable report to this file");

  std::string proof_path, model_path, expr_path, bindings_path, seq_path, example_name,
      bounds_path;
  uint64_t seed = 42;
  int iters = 1000;
  std::string select;

  auto* check = app.add_subcommand("check", "verify a proof script");
  check->add_option("proof", proof_path, "proof file")->required();

  auto* eval = app.add_subcommand("eval", "evaluate an expression in a finite model");
  eval->add_option("expr", expr_path, "expression file")->required();
  eval->add_option("model", model_path, "model file")->required();
  eval->add_option("bindings", bindings_path, "variable bindings file");

  auto* entails = app.add_subcommand("entails", "decide bounded entailment of a sequent");
  entails->add_option("sequent", seq_path, "sequent file")->required();
  entails->add_option("model", model_path, "model file")->required();

  auto* validate = app.add_subcommand("validate", "model-check the sequents of a proof script");
  validate->add_option("proof", proof_path, "proof file")->required();
  validate->add_option("model", model_path, "model file")->required();

  auto* props = app.add_subcommand("props", "run the algebraic property registry");
  props->add_flag("--all", "run every registered property (default)");
  props->add_option("--select", select, "comma-separated property names");
  props->add_option("--seed", seed, "generator seed");
  props->add_option("--iters", iters, "iterations per property");
  props->add_option("--bounds", bounds_path, "model file supplying generator bounds");

  auto* examples = app.add_subcommand("examples", "print recomputed worked examples");
  examples->add_option("name", example_name, "example name (fig-examples)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitUsage : kExitOk;
  }

  try {
    if (check->parsed()) return cmd_check(proof_path, report_path);
    if (eval->parsed()) return cmd_eval(expr_path, model_path, bindings_path, report_path);
    if (entails->parsed()) return cmd_entails(seq_path, model_path, report_path);
    if (validate->parsed()) return cmd_validate(proof_path, model_path, report_path);
    if (props->parsed()) {
      std::vector<std::string> selection;
      std::stringstream ss(select);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) selection.push_back(item);
      return cmd_props(selection, seed, iters, bounds_path, report_path);
    }
    if (examples->parsed()) return cmd_examples(example_name, report_path);
  } catch (const mortt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
