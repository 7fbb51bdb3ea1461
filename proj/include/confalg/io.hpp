#pragma once

// Definition files (JSON with polynomial strings), the registry of built-in
// objects, the element grammar used by the CLI, and certificate assembly.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "confalg/builtins.hpp"
#include "confalg/constructions.hpp"
#include "confalg/rep.hpp"

namespace confalg {

using Json = nlohmann::ordered_json;

struct CendAmbientObj {
  int n = 1;
};

struct PairingSpec {
  std::string algebra, v_rep, m_rep;
  Pairing pairing;
};

// Named objects visible to the CLI: built-ins plus anything loaded from a
// definition file.
struct Workspace {
  std::map<std::string, ConfAlgebra> algebras;
  std::map<std::string, CendAmbientObj> ambients;
  std::map<std::string, HModulePresentation> modules;
  std::map<std::string, ConfRep> representations;
  std::map<std::string, PairingSpec> pairings;

  bool has(const std::string& name) const;
  void merge_file(const Json& doc);  // parses and adds a definition file
};

Workspace builtin_workspace();

// Serialization of a representation (with its algebra and module) as a
// definition file that re-parses through Workspace::merge_file.
Json representation_to_json(const std::string& name, const ConfRep& R);
Json algebra_to_json(const ConfAlgebra& C);

// Elements over an explicit symbol set with Q[D] coefficients:
// "x", "D*x + 3*y", "(D^2 - 1/2)*e". Unknown identifiers (other than D) are
// rejected.
ConfElement parse_element(const std::vector<std::string>& symbols, std::string_view text);

// Matrix elements of Cend_n: sums of "poly" (n = 1) and "poly*eIJ" terms.
MatrixConfElem parse_matrix_element(int n, std::string_view text);

uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::string_view data);

// ---------------------------------------------------------------------------
// CLI command cores (shared by tools/ and the tests).

struct CheckOptions {
  enum class Mode { axioms, units, solvable, central_pbw } mode = Mode::axioms;
  int pbw_uniform = 1;
  std::map<std::string, int> pbw_overrides;
  std::optional<int> degree_bound;  // unit search
};

struct BuildOptions {
  std::string method;  // adjoin-unit | double | central-pbw | solvable
  std::optional<int> mprime;
  int K = 1;
  std::map<std::string, int> N_overrides;
  std::optional<int> N_uniform;
  std::optional<std::string> pairing;   // named pairing for --method double
  std::optional<std::string> out_file;  // representation emission target
};

struct CmdResult {
  int exit_code = 0;
  Json certificate;
  std::string text;                      // human-readable summary
  std::optional<Json> emitted_rep;       // build-rep output file content
};

CmdResult cmd_check(const Workspace& ws, const std::string& object, const CheckOptions& opt);
CmdResult cmd_build_rep(const Workspace& ws, const std::string& object, const BuildOptions& opt);
CmdResult cmd_eval(const Workspace& ws, const std::string& object, const std::string& expression);
CmdResult cmd_growth(const Workspace& ws, const std::string& object,
                     const std::vector<std::string>& generators, int n_max);

}  // namespace confalg
