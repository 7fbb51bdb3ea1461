// Command-line front end: check axioms/units/solvability/central-PBW,
// build representations, evaluate products, and compute growth profiles on
// definition-file or built-in objects.
//
// Exit codes: 0 pass, 1 check failure, 2 input error, 3 precondition error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "confalg/io.hpp"

namespace {

using namespace confalg;

Workspace load_workspace(const std::string& file) {
  Workspace ws = builtin_workspace();
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw ParseError("cannot open definition file: " + file);
    Json doc;
    try {
      in >> doc;
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad JSON in definition file: ") + e.what());
    }
    ws.merge_file(doc);
  }
  return ws;
}

std::map<std::string, int> parse_bound_list(const std::string& spec) {
  // "x=1,y=2"
  std::map<std::string, int> out;
  if (spec.empty()) return out;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected sym=int in bound list: " + item);
    out[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
  }
  return out;
}

void emit(const CmdResult& r, bool json_mode) {
  if (json_mode)
    std::cout << r.certificate.dump(2) << "\n";
  else
    std::cout << r.text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact toolkit for finite conformal algebras over Q[D]"};
  app.require_subcommand(1);

  std::string file;
  bool json_mode = false;
  app.add_option("--file", file, "definition file (JSON) merged over the built-ins");
  app.add_flag("--json", json_mode, "emit the JSON certificate instead of text");

  // check
  auto* check = app.add_subcommand("check", "run axiom/unit/solvability/invariance checks");
  std::string check_object;
  check->add_option("object", check_object)->required();
  bool f_axioms = false, f_units = false, f_solvable = false;
  int pbw_n = -1;
  std::string n_list;
  int degree_bound = -1;
  check->add_flag("--axioms", f_axioms);
  check->add_flag("--units", f_units);
  check->add_flag("--solvable", f_solvable);
  check->add_option("--central-pbw", pbw_n, "uniform locality bound N");
  check->add_option("--N", n_list, "per-symbol bounds, e.g. x=1,y=2");
  check->add_option("--degree-bound", degree_bound, "unit search degree bound");

  // build-rep
  auto* build = app.add_subcommand("build-rep", "construct a representation");
  std::string build_object, method, build_n_list, out_file, pairing;
  int mprime = -1, K = 1, n_uniform = -1;
  build->add_option("object", build_object)->required();
  build->add_option("--method", method, "adjoin-unit | double | central-pbw | solvable")
      ->required();
  build->add_option("--Mprime", mprime, "module locality for adjoin-unit");
  build->add_option("--K", K, "base bound for the solvable recursion");
  build->add_option("--N", build_n_list, "per-symbol bounds for central-pbw, e.g. x=1");
  build->add_option("--N-uniform", n_uniform, "uniform bound for central-pbw");
  build->add_option("--pairing", pairing, "named pairing for --method double");
  build->add_option("--out", out_file, "path for the emitted representation file");

  // eval
  auto* eval = app.add_subcommand("eval", "evaluate a product expression");
  std::string eval_object, expression;
  eval->add_option("object", eval_object)->required();
  eval->add_option("expression", expression)->required();

  // growth
  auto* growth = app.add_subcommand("growth", "rank profile of generated submodules");
  std::string growth_object, gen_list;
  int nmax = 6;
  growth->add_option("object", growth_object)->required();
  growth->add_option("--generators", gen_list, "comma-separated generator expressions");
  growth->add_option("--nmax", nmax);

  CLI11_PARSE(app, argc, argv);

  try {
    Workspace ws = load_workspace(file);
    CmdResult result;
    if (*check) {
      CheckOptions opt;
      if (f_units)
        opt.mode = CheckOptions::Mode::units;
      else if (f_solvable)
        opt.mode = CheckOptions::Mode::solvable;
      else if (pbw_n >= 0 || !n_list.empty())
        opt.mode = CheckOptions::Mode::central_pbw;
      else
        opt.mode = CheckOptions::Mode::axioms;
      if (pbw_n >= 0) opt.pbw_uniform = pbw_n;
      opt.pbw_overrides = parse_bound_list(n_list);
      if (degree_bound >= 0) opt.degree_bound = degree_bound;
      result = cmd_check(ws, check_object, opt);
    } else if (*build) {
      BuildOptions opt;
      opt.method = method;
      if (mprime >= 0) opt.mprime = mprime;
      opt.K = K;
      if (n_uniform >= 0) opt.N_uniform = n_uniform;
      opt.N_overrides = parse_bound_list(build_n_list);
      if (!pairing.empty()) opt.pairing = pairing;
      result = cmd_build_rep(ws, build_object, opt);
      std::string path = out_file.empty()
                             ? build_object + "_" + method + "_rep.json"
                             : out_file;
      if (result.emitted_rep) {
        std::ofstream of(path);
        of << result.emitted_rep->dump(2) << "\n";
        if (!json_mode) result.text += "wrote " + path + "\n";
      }
    } else if (*eval) {
      result = cmd_eval(ws, eval_object, expression);
    } else {
      std::vector<std::string> gens;
      if (!gen_list.empty()) {
        std::istringstream ss(gen_list);
        std::string item;
        while (std::getline(ss, item, ',')) gens.push_back(item);
      }
      result = cmd_growth(ws, growth_object, gens, nmax);
    }
    emit(result, json_mode);
    return result.exit_code;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 3;
  } catch (const MembershipError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 3;
  } catch (const WellDefinednessError& e) {
    std::cerr << "precondition error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
