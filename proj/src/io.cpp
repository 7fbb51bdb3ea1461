#include "confalg/io.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <sstream>

namespace confalg {

namespace {

// ---------------------------------------------------------------------------
// Element grammar: sums/products of rationals, D, and symbols, H-linear in
// the symbols.

struct Lin {
  MultiPoly scalar;
  std::map<std::string, MultiPoly> terms;

  bool has_symbols() const { return !terms.empty(); }
};

Lin lin_add(Lin a, const Lin& b, bool negate) {
  if (negate)
    a.scalar -= b.scalar;
  else
    a.scalar += b.scalar;
  for (const auto& [s, p] : b.terms) {
    auto& slot = a.terms[s];
    if (negate)
      slot -= p;
    else
      slot += p;
    if (slot.is_zero()) a.terms.erase(s);
  }
  return a;
}

Lin lin_mul(const Lin& a, const Lin& b) {
  if (a.has_symbols() && b.has_symbols())
    throw ParseError("element expressions must be H-linear in the symbols");
  Lin out;
  out.scalar = a.scalar * b.scalar;
  const Lin& sym = a.has_symbols() ? a : b;
  const MultiPoly& coeff = a.has_symbols() ? b.scalar : a.scalar;
  for (const auto& [s, p] : sym.terms) {
    MultiPoly v = coeff * p;
    if (!v.is_zero()) out.terms.emplace(s, v);
  }
  return out;
}

class ElementParser {
 public:
  ElementParser(const std::vector<std::string>& symbols, std::string_view text)
      : symbols_(symbols.begin(), symbols.end()), s_(text) {}

  ConfElement run() {
    Lin v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    if (!v.scalar.is_zero())
      throw ParseError("element has a symbol-free part: " + v.scalar.to_string());
    ConfElement out;
    for (const auto& [s, p] : v.terms) {
      if (!p.uses_only({Var::D}))
        throw ParseError("element coefficients must lie in Q[D]: " + p.to_string());
      out.add_term(s, p);
    }
    return out;
  }

 private:
  Lin expr() {
    skip_ws();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = (take() == '-');
    Lin v = term();
    if (neg) v = lin_add(Lin{}, v, true);
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return v;
      take();
      v = lin_add(v, term(), c == '-');
    }
  }

  Lin term() {
    Lin v = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') return v;
      take();
      v = lin_mul(v, factor());
    }
  }

  Lin factor() {
    Lin v = primary();
    skip_ws();
    if (peek() == '^') {
      take();
      skip_ws();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start))));
      if (v.has_symbols() && e != 1)
        throw ParseError("element expressions must be H-linear in the symbols");
      Lin out;
      out.scalar = v.scalar.pow(e);
      if (v.has_symbols()) out = v;
      v = out;
    }
    return v;
  }

  Lin primary() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      take();
      Lin v = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      take();
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
      Lin v;
      v.scalar = MultiPoly::constant(Rational::from_string(s_.substr(start, pos_ - start)));
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (symbols_.count(name)) {
        Lin v;
        v.terms.emplace(name, MultiPoly::constant(Rational(1)));
        return v;
      }
      if (name == "D") {
        Lin v;
        v.scalar = MultiPoly::variable(Var::D);
        return v;
      }
      throw ParseError("unknown symbol in element expression: " + name);
    }
    fail("unexpected character");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError("element parse error at position " + std::to_string(pos_) + ": " + why);
  }

  std::set<std::string> symbols_;
  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

ConfElement parse_element(const std::vector<std::string>& symbols, std::string_view text) {
  return ElementParser(symbols, text).run();
}

MatrixConfElem parse_matrix_element(int n, std::string_view text) {
  if (n == 1) {
    MultiPoly p = MultiPoly::parse(text);
    if (!p.uses_only({Var::D, Var::X}))
      throw ParseError("Cend_1 elements live in Q[D, x]: " + p.to_string());
    return MatrixConfElem(1, {p});
  }
  // Sums of poly*eIJ terms; split at top-level +/-.
  MatrixConfElem out(n);
  std::string s(text);
  size_t pos = 0;
  int depth = 0;
  std::vector<std::pair<std::string, bool>> pieces;  // (term, negated)
  std::string cur;
  bool neg = false;
  auto flush = [&]() {
    if (!cur.empty()) pieces.push_back({cur, neg});
    cur.clear();
  };
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && (c == '+' || c == '-') && !cur.empty()) {
      flush();
      neg = (c == '-');
      continue;
    }
    if (depth == 0 && c == '-' && cur.empty()) {
      neg = true;
      continue;
    }
    cur += c;
  }
  flush();
  for (auto& [piece, negated] : pieces) {
    // Separate the trailing eIJ factor.
    std::string body = piece;
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.pop_back();
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front())))
      body.erase(body.begin());
    int i = -1, j = -1;
    bool is_unit = false;
    if (body.size() >= 3) {
      size_t p = body.size() - 3;
      bool boundary = p == 0 || body[p - 1] == '*' ||
                      std::isspace(static_cast<unsigned char>(body[p - 1]));
      if (boundary && body[p] == 'e' &&
          std::isdigit(static_cast<unsigned char>(body[p + 1])) &&
          std::isdigit(static_cast<unsigned char>(body[p + 2]))) {
        i = body[p + 1] - '1';
        j = body[p + 2] - '1';
        is_unit = true;
        body = body.substr(0, p);
        while (!body.empty() && (std::isspace(static_cast<unsigned char>(body.back())) ||
                                 body.back() == '*'))
          body.pop_back();
      }
    }
    if (!is_unit)
      throw ParseError("Cend_" + std::to_string(n) +
                       " elements are sums of poly*eIJ terms; got: " + piece);
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw ParseError("matrix unit out of range in: " + piece);
    MultiPoly p = body.empty() ? MultiPoly::constant(Rational(1)) : MultiPoly::parse(body);
    if (!p.uses_only({Var::D, Var::X}))
      throw ParseError("Cend entries live in Q[D, x]: " + p.to_string());
    if (negated) p = -p;
    out.at(i, j) += p;
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON parsing

namespace {

MultiPoly parse_poly_field(const Json& j, std::initializer_list<Var> allowed) {
  if (!j.is_string()) throw ParseError("polynomial fields must be strings");
  MultiPoly p = MultiPoly::parse(j.get<std::string>());
  if (!p.uses_only(allowed)) throw ParseError("polynomial uses a forbidden variable: " + p.to_string());
  return p;
}

ConfElement parse_value_pairs(const Json& j, std::initializer_list<Var> allowed) {
  ConfElement v;
  if (!j.is_array()) throw ParseError("value must be an array of [symbol, poly] pairs");
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw ParseError("bad [symbol, poly] pair");
    v.add_term(pair[0].get<std::string>(), parse_poly_field(pair[1], allowed));
  }
  return v;
}

OrdinaryAlgebra parse_ordinary(const Json& j) {
  AlgebraKind kind = AlgebraKind::associative;
  if (j.contains("kind")) {
    std::string k = j["kind"].get<std::string>();
    if (k == "lie")
      kind = AlgebraKind::lie;
    else if (k != "associative")
      throw ParseError("unknown ordinary algebra kind: " + k);
  }
  std::vector<std::string> names;
  if (j.contains("names")) {
    for (const auto& n : j["names"]) names.push_back(n.get<std::string>());
  } else if (j.contains("dimension")) {
    int d = j["dimension"].get<int>();
    for (int i = 1; i <= d; ++i) names.push_back("a" + std::to_string(i));
  } else {
    throw ParseError("ordinary algebra needs names or dimension");
  }
  OrdinaryAlgebra A(kind, names);
  if (j.contains("structure"))
    for (const auto& t : j["structure"]) {
      if (!t.is_array() || t.size() != 4) throw ParseError("structure entries are [i, j, k, c]");
      A.set_product(t[0].get<int>(), t[1].get<int>(), t[2].get<int>(),
                    Rational::from_string(t[3].get<std::string>()));
    }
  if (j.contains("derivation")) {
    std::vector<Rational> der;
    for (const auto& row : j["derivation"])
      for (const auto& cell : row) der.push_back(Rational::from_string(cell.get<std::string>()));
    A.set_derivation(std::move(der));
  }
  return A;
}

ConfAlgebra parse_algebra(const Json& j) {
  if (j.contains("current")) return current_algebra(parse_ordinary(j["current"]));
  if (j.contains("differential")) return differential_algebra(parse_ordinary(j["differential"]));
  std::string kind_str = j.at("kind").get<std::string>();
  AlgebraKind kind;
  if (kind_str == "associative")
    kind = AlgebraKind::associative;
  else if (kind_str == "lie")
    kind = AlgebraKind::lie;
  else
    throw ParseError("unknown algebra kind: " + kind_str);
  std::vector<std::string> basis;
  for (const auto& b : j.at("basis")) basis.push_back(b.get<std::string>());
  std::vector<TableEntry> entries;
  if (j.contains("table"))
    for (const auto& e : j["table"])
      entries.push_back({e.at("a").get<std::string>(), e.at("b").get<std::string>(),
                         parse_value_pairs(e.at("value"), {Var::D, Var::L})});
  return ConfAlgebra(kind, std::move(basis), std::move(entries));
}

HModulePresentation parse_module(const Json& j) {
  std::vector<std::string> gens;
  std::vector<MultiPoly> rels;
  for (const auto& g : j.at("generators")) gens.push_back(g.get<std::string>());
  for (const auto& r : j.at("relations")) rels.push_back(parse_poly_field(r, {Var::D}));
  return HModulePresentation(std::move(gens), std::move(rels));
}

}  // namespace

bool Workspace::has(const std::string& name) const {
  return algebras.count(name) || ambients.count(name) || modules.count(name) ||
         representations.count(name) || pairings.count(name);
}

void Workspace::merge_file(const Json& doc) {
  if (doc.contains("version") && doc["version"].get<int>() != 1)
    throw ParseError("unsupported definition file version");
  if (doc.contains("algebras"))
    for (const auto& [name, j] : doc["algebras"].items()) {
      if (has(name)) throw ParseError("duplicate object name: " + name);
      algebras.emplace(name, parse_algebra(j));
    }
  if (doc.contains("modules"))
    for (const auto& [name, j] : doc["modules"].items()) {
      if (has(name)) throw ParseError("duplicate object name: " + name);
      modules.emplace(name, parse_module(j));
    }
  if (doc.contains("representations"))
    for (const auto& [name, j] : doc["representations"].items()) {
      if (has(name)) throw ParseError("duplicate object name: " + name);
      auto ait = algebras.find(j.at("algebra").get<std::string>());
      if (ait == algebras.end()) throw ParseError("representation references unknown algebra");
      auto mit = modules.find(j.at("module").get<std::string>());
      if (mit == modules.end()) throw ParseError("representation references unknown module");
      std::vector<ActionEntry> action;
      if (j.contains("action"))
        for (const auto& e : j["action"])
          action.push_back({e.at("symbol").get<std::string>(),
                            e.at("generator").get<std::string>(),
                            parse_value_pairs(e.at("value"), {Var::D, Var::L})});
      bool op = j.contains("op_action") && j["op_action"].get<bool>();
      representations.emplace(name, make_rep(ait->second, mit->second, std::move(action), op));
    }
  if (doc.contains("pairings"))
    for (const auto& [name, j] : doc["pairings"].items()) {
      if (has(name)) throw ParseError("duplicate object name: " + name);
      PairingSpec spec;
      spec.algebra = j.at("algebra").get<std::string>();
      spec.v_rep = j.at("v").get<std::string>();
      spec.m_rep = j.at("m").get<std::string>();
      if (!algebras.count(spec.algebra) || !representations.count(spec.v_rep) ||
          !representations.count(spec.m_rep))
        throw ParseError("pairing references unknown objects");
      for (const auto& e : j.at("entries"))
        spec.pairing.set(e.at("symbol").get<std::string>(), e.at("generator").get<std::string>(),
                         parse_value_pairs(e.at("value"), {Var::D, Var::L}));
      pairings.emplace(name, std::move(spec));
    }
}

Workspace builtin_workspace() {
  Workspace ws;
  ws.algebras.emplace("virasoro", virasoro());
  ws.algebras.emplace("curr_q", current_algebra(ordinary_field()));
  ws.algebras.emplace("curr_eps", current_algebra(ordinary_dual_numbers()));
  ws.algebras.emplace("curr_m2", current_algebra(ordinary_matrix_algebra(2)));
  ws.algebras.emplace("curr_sl2", current_algebra(ordinary_sl2()));
  ws.algebras.emplace("curr_gl2", current_algebra(ordinary_commutator(ordinary_matrix_algebra(2))));
  ws.algebras.emplace("curr_solv2", current_algebra(ordinary_solvable2()));
  ws.algebras.emplace("curr_abel2", current_algebra(ordinary_abelian(2)));
  ws.algebras.emplace("solv_xy", solvable_xy());
  ConfAlgebra ex32 = split_null_trunc();
  ws.algebras.emplace("ex3_2", ex32);
  ws.algebras.emplace("ex3_2_op", opposite_algebra(ex32));
  ws.algebras.emplace("diff_x3", differential_algebra(ordinary_truncated_poly(3)));
  ws.algebras.emplace("diff_m2x2", differential_algebra(ordinary_matrix_truncated_poly(2, 2)));
  ws.ambients.emplace("weyl", CendAmbientObj{1});
  ws.ambients.emplace("cend1", CendAmbientObj{1});
  ws.ambients.emplace("cend2", CendAmbientObj{2});

  HModulePresentation m34({"one", "vbar"}, {MultiPoly(), MultiPoly::variable(Var::D)});
  ws.modules.emplace("m3_4", m34);
  // Right action of ex3_2 on C/C_1 encoded as a left action of the opposite.
  std::vector<ActionEntry> act34{{"e", "one", ConfElement::symbol("one")},
                                 {"v", "one", ConfElement::symbol("vbar")}};
  ws.representations.emplace(
      "ex3_4", make_rep(ws.algebras.at("ex3_2_op"), m34, std::move(act34), /*op_action=*/true));
  return ws;
}

// ---------------------------------------------------------------------------
// Serialization

Json algebra_to_json(const ConfAlgebra& C) {
  Json j;
  j["kind"] = kind_name(C.kind());
  j["basis"] = C.basis();
  Json table = Json::array();
  for (const auto& a : C.basis())
    for (const auto& b : C.basis()) {
      const ConfElement& v = C.table(a, b);
      if (v.is_zero()) continue;
      Json pairs = Json::array();
      for (const auto& [t, p] : v.coords()) pairs.push_back(Json::array({t, p.to_string()}));
      table.push_back(Json{{"a", a}, {"b", b}, {"value", pairs}});
    }
  j["table"] = table;
  return j;
}

Json representation_to_json(const std::string& name, const ConfRep& R) {
  Json doc;
  doc["version"] = 1;
  std::string alg_name = name + "_alg";
  std::string mod_name = name + "_mod";
  doc["algebras"][alg_name] = algebra_to_json(R.algebra());
  Json mod;
  mod["generators"] = R.module().generators();
  Json rels = Json::array();
  for (int i = 0; i < R.module().size(); ++i) rels.push_back(R.module().relation(i).to_string());
  mod["relations"] = rels;
  doc["modules"][mod_name] = mod;
  Json rep;
  rep["algebra"] = alg_name;
  rep["module"] = mod_name;
  if (R.op_action()) rep["op_action"] = true;
  Json action = Json::array();
  for (const auto& b : R.algebra().basis())
    for (const auto& g : R.module().generators()) {
      const ConfElement& v = R.action(b, g);
      if (v.is_zero()) continue;
      Json pairs = Json::array();
      for (const auto& [t, p] : v.coords()) pairs.push_back(Json::array({t, p.to_string()}));
      action.push_back(Json{{"symbol", b}, {"generator", g}, {"value", pairs}});
    }
  rep["action"] = action;
  doc["representations"][name] = rep;
  return doc;
}

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_hex(std::string_view data) {
  std::ostringstream os;
  os << std::hex << fnv1a64(data);
  return "fnv1a:" + os.str();
}

// ---------------------------------------------------------------------------
// Command cores

namespace {

Json witnesses_to_json(const std::vector<AxiomWitness>& ws, const ConfAlgebra& C) {
  Json out = Json::array();
  for (const auto& w : ws) {
    Json item;
    item["law"] = w.law;
    item["symbols"] = w.symbols;
    item["residual"] = w.residual.to_string(C.basis());
    out.push_back(item);
  }
  return out;
}

const ConfAlgebra& require_algebra(const Workspace& ws, const std::string& object) {
  auto it = ws.algebras.find(object);
  if (it == ws.algebras.end()) throw ParseError("no algebra named " + object);
  return it->second;
}

std::string object_digest(const Workspace& ws, const std::string& object) {
  if (auto it = ws.algebras.find(object); it != ws.algebras.end())
    return digest_hex(algebra_to_json(it->second).dump());
  if (auto it = ws.representations.find(object); it != ws.representations.end())
    return digest_hex(representation_to_json(object, it->second).dump());
  if (auto it = ws.ambients.find(object); it != ws.ambients.end())
    return digest_hex("cend" + std::to_string(it->second.n));
  return digest_hex(object);
}

// Associativity of the Cend_n product on monomial triples (entries D^a x^b
// with a+b small, on every matrix unit).
bool check_cend_associativity(int n, int degree_cap, Json& results) {
  std::vector<MatrixConfElem> monos;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a + 0 <= degree_cap; ++a)
        for (int b = 0; a + b <= degree_cap; ++b) {
          ExpVec e{};
          e[static_cast<int>(Var::D)] = a;
          e[static_cast<int>(Var::X)] = b;
          monos.push_back(MatrixConfElem::unit(n, i, j, MultiPoly::monomial(e, Rational(1))));
        }
  const MultiPoly l = MultiPoly::variable(Var::L);
  const MultiPoly m = MultiPoly::variable(Var::M);
  int failures = 0;
  for (const auto& A : monos)
    for (const auto& B : monos)
      for (const auto& C : monos) {
        MatrixConfElem lhs = cend_product(A, cend_product(B, C, m), l);
        MatrixConfElem rhs = cend_product(cend_product(A, B, l), C, l + m);
        if (!(lhs == rhs)) ++failures;
      }
  Json r;
  r["name"] = "cend-associativity";
  r["passed"] = failures == 0;
  r["checked_triples"] = monos.size() * monos.size() * monos.size();
  results.push_back(r);
  return failures == 0;
}

}  // namespace

CmdResult cmd_check(const Workspace& ws, const std::string& object, const CheckOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CmdResult out;
  Json cert;
  cert["command"] = "check";
  cert["object"] = object;
  Json results = Json::array();
  bool passed = true;
  std::ostringstream text;

  switch (opt.mode) {
    case CheckOptions::Mode::axioms: {
      if (auto it = ws.ambients.find(object); it != ws.ambients.end()) {
        cert["options"] = {{"mode", "axioms"}};
        passed = check_cend_associativity(it->second.n, 2, results);
        text << "check " << object << " --axioms: " << (passed ? "PASS" : "FAIL") << "\n";
        break;
      }
      const ConfAlgebra& C = require_algebra(ws, object);
      cert["options"] = {{"mode", "axioms"}};
      CheckReport rep = check_axioms(C);
      Json r;
      r["name"] = C.kind() == AlgebraKind::associative ? "associativity" : "lie-axioms";
      r["passed"] = rep.passed;
      r["witnesses"] = witnesses_to_json(rep.witnesses, C);
      results.push_back(r);
      passed = rep.passed;
      text << "check " << object << " --axioms: " << (passed ? "PASS" : "FAIL") << "\n";
      for (const auto& w : rep.witnesses)
        text << "  " << w.law << " fails at (" << [&] {
          std::string s;
          for (size_t i = 0; i < w.symbols.size(); ++i) s += (i ? ", " : "") + w.symbols[i];
          return s;
        }() << "): " << w.residual.to_string(C.basis()) << "\n";
      break;
    }
    case CheckOptions::Mode::units: {
      const ConfAlgebra& C = require_algebra(ws, object);
      cert["options"] = {{"mode", "units"}};
      if (opt.degree_bound) cert["options"]["degree_bound"] = *opt.degree_bound;
      int bound = opt.degree_bound.value_or(-1);
      struct SideSpec {
        const char* name;
        UnitSide side;
      };
      for (auto [name, side] : {SideSpec{"left", UnitSide::left},
                                SideSpec{"right", UnitSide::right},
                                SideSpec{"two-sided", UnitSide::two_sided}}) {
        auto unit = find_unit(C, side, bound);
        Json r;
        r["name"] = std::string(name) + "-unit";
        r["status"] = unit ? "found" : "none-within-bound";
        if (unit) r["witness"] = unit->to_string(C.basis());
        results.push_back(r);
        text << "  " << name << " unit: "
             << (unit ? unit->to_string(C.basis()) : "none within bound") << "\n";
      }
      text.str("check " + object + " --units:\n" + text.str());
      break;
    }
    case CheckOptions::Mode::solvable: {
      const ConfAlgebra& C = require_algebra(ws, object);
      cert["options"] = {{"mode", "solvable"}};
      DerivedSeries s = derived_series(C);
      Json r;
      r["name"] = "solvable";
      r["passed"] = s.solvable;
      Json ranks = Json::array();
      for (const auto& t : s.terms) ranks.push_back(t.rank());
      r["series_ranks"] = ranks;
      results.push_back(r);
      passed = s.solvable;
      text << "check " << object << " --solvable: " << (passed ? "PASS" : "FAIL")
           << " (series ranks:";
      for (const auto& t : s.terms) text << " " << t.rank();
      text << ")\n";
      break;
    }
    case CheckOptions::Mode::central_pbw: {
      const ConfAlgebra& C = require_algebra(ws, object);
      LocalityBound N;
      for (const auto& b : C.basis()) N[b] = opt.pbw_uniform;
      for (const auto& [k, v] : opt.pbw_overrides) N[k] = v;
      Json nj;
      for (const auto& [k, v] : N) nj[k] = v;
      cert["options"] = {{"mode", "central-pbw"}, {"N", nj}};
      PbwReport rep = check_central_pbw(C, N);
      Json r;
      r["name"] = "central-pbw-invariance";
      r["passed"] = rep.passed;
      if (!rep.passed) {
        const auto& w = *rep.witness;
        r["witness"] = {{"a", w.a}, {"n", w.n}, {"m", w.m}, {"b", w.b},
                        {"image", w.image.to_string()}};
      }
      results.push_back(r);
      passed = rep.passed;
      text << "check " << object << " --central-pbw: " << (passed ? "PASS" : "FAIL") << "\n";
      if (!rep.passed) {
        const auto& w = *rep.witness;
        text << "  witness: " << w.a << " o_" << w.n << " (t^" << w.m << " (" << w.b
             << ")) = " << w.image.to_string() << "\n";
      }
      break;
    }
  }

  cert["inputs_digest"] = object_digest(ws, object);
  cert["results"] = results;
  cert["passed"] = passed;
  auto t1 = std::chrono::steady_clock::now();
  cert["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  out.certificate = cert;
  out.exit_code = passed ? 0 : 1;
  out.text = text.str();
  return out;
}

CmdResult cmd_build_rep(const Workspace& ws, const std::string& object, const BuildOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  const ConfAlgebra& C = require_algebra(ws, object);
  CmdResult out;
  Json cert;
  cert["command"] = "build-rep";
  cert["object"] = object;
  cert["method"] = opt.method;
  std::ostringstream text;

  std::optional<ConfRep> built;
  bool guarantee = true;
  if (opt.method == "adjoin-unit") {
    AdjoinUnitResult r = adjoin_unit_rep(C, opt.mprime);
    cert["parameters"] = {{"M", r.table_bound}, {"Mprime", r.module_locality}};
    cert["guarantee"] = r.guarantee;
    if (!r.note.empty()) cert["note"] = r.note;
    guarantee = r.guarantee;
    built = std::move(r.rep);
  } else if (opt.method == "double") {
    std::optional<ConfRep> V, M;
    Pairing P;
    if (opt.pairing) {
      auto it = ws.pairings.find(*opt.pairing);
      if (it == ws.pairings.end()) throw ParseError("no pairing named " + *opt.pairing);
      V = ws.representations.at(it->second.v_rep);
      M = ws.representations.at(it->second.m_rep);
      P = it->second.pairing;
    } else {
      V = make_rep(C, HModulePresentation::free_module({"u"}), {});
      M = regular_rep(C);
      P = canonical_pairing(C, "u");
    }
    cert["parameters"] = {{"pairing", opt.pairing ? *opt.pairing : "canonical"}};
    built = double_rep(*V, *M, P);
  } else if (opt.method == "central-pbw") {
    LocalityBound N;
    for (const auto& b : C.basis()) N[b] = opt.N_uniform.value_or(1);
    for (const auto& [k, v] : opt.N_overrides) N[k] = v;
    Json nj;
    for (const auto& [k, v] : N) nj[k] = v;
    cert["parameters"] = {{"N", nj}};
    CentralPbwResult r = central_pbw_rep(C, N);
    built = std::move(r.rep);
  } else if (opt.method == "solvable") {
    SolvableResult r = solvable_faithful_rep(C, opt.K);
    Json nj;
    for (const auto& [k, v] : r.N) nj[k] = v;
    Json ranks = Json::array();
    for (const auto& t : r.series.terms) ranks.push_back(t.rank());
    cert["parameters"] = {{"K", opt.K}, {"N", nj}, {"series_ranks", ranks}};
    built = std::move(r.rep);
  } else {
    throw ParseError("unknown build method: " + opt.method);
  }

  CheckReport rc = check_rep(*built);
  Faithfulness f = is_faithful(*built);
  SubmoduleBasis ker = rep_kernel(*built);
  cert["module_rank"] = built->module().size();
  cert["checks"] = {{"check_rep", rc.passed}, {"faithful", f.faithful}};
  Json kernel = Json::array();
  for (const auto& g : ker.generators())
    kernel.push_back(C.from_vector(g).to_string(C.basis()));
  cert["kernel_basis"] = kernel;

  std::string rep_name = object + "_" + opt.method + "_rep";
  std::replace(rep_name.begin(), rep_name.end(), '-', '_');
  out.emitted_rep = representation_to_json(rep_name, *built);
  cert["inputs_digest"] = object_digest(ws, object);
  bool passed = rc.passed && (f.faithful || !guarantee);
  cert["passed"] = passed;
  auto t1 = std::chrono::steady_clock::now();
  cert["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

  text << "build-rep " << object << " --method " << opt.method << ": rank "
       << built->module().size() << ", " << (f.faithful ? "faithful" : "kernel nonzero")
       << ", check_rep " << (rc.passed ? "pass" : "FAIL") << "\n";
  if (!guarantee) text << "  note: " << cert["note"].get<std::string>() << "\n";

  out.certificate = cert;
  out.exit_code = passed ? 0 : 1;
  out.text = text.str();
  return out;
}

namespace {

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  for (auto& a : out) {
    while (!a.empty() && std::isspace(static_cast<unsigned char>(a.front()))) a.erase(a.begin());
    while (!a.empty() && std::isspace(static_cast<unsigned char>(a.back()))) a.pop_back();
  }
  return out;
}

int parse_int_arg(const std::string& s) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError("bad integer: " + s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer argument: " + s);
  }
}

}  // namespace

CmdResult cmd_eval(const Workspace& ws, const std::string& object, const std::string& expression) {
  auto t0 = std::chrono::steady_clock::now();
  // func(arg, arg, ...)
  auto open = expression.find('(');
  if (open == std::string::npos || expression.back() != ')')
    throw ParseError("expressions look like lprod(a, b), nprod(a, b, n), braced(a, b, n), "
                     "act(R, a, v), central(x, n, m, b)");
  std::string func = expression.substr(0, open);
  while (!func.empty() && std::isspace(static_cast<unsigned char>(func.back()))) func.pop_back();
  std::vector<std::string> args =
      split_args(expression.substr(open + 1, expression.size() - open - 2));

  std::string result;
  if (func == "act") {
    // The representation is named in the first argument; the command object
    // only scopes the workspace lookup.
    if (!ws.has(object)) throw ParseError("no object named " + object);
    if (args.size() != 3) throw ParseError("act needs (R, a, v)");
    auto r2 = ws.representations.find(args[0]);
    if (r2 == ws.representations.end()) throw ParseError("no representation named " + args[0]);
    const ConfRep& R = r2->second;
    ConfElement a = parse_element(R.algebra().basis(), args[1]);
    ConfElement v = parse_element(R.module().generators(), args[2]);
    result = R.act_lambda(a, v).to_string(R.module().generators());
  } else if (auto it = ws.ambients.find(object); it != ws.ambients.end()) {
    int n = it->second.n;
    if (func == "lprod" || func == "nprod" || func == "braced") {
      if (args.size() < 2) throw ParseError(func + " needs two elements");
      MatrixConfElem a = parse_matrix_element(n, args[0]);
      MatrixConfElem b = parse_matrix_element(n, args[1]);
      if (func == "lprod") {
        result = cend_product(a, b).to_string();
      } else {
        if (args.size() != 3) throw ParseError(func + " needs (a, b, n)");
        unsigned k = static_cast<unsigned>(parse_int_arg(args[2]));
        result = (func == "nprod" ? cend_n_product(a, b, k) : cend_braced_product(a, b, k))
                     .to_string();
      }
    } else {
      throw ParseError("unknown ambient eval function: " + func);
    }
  } else {
    const ConfAlgebra& C = require_algebra(ws, object);
    if (func == "lprod" || func == "nprod" || func == "braced") {
      if (args.size() < 2) throw ParseError(func + " needs two elements");
      ConfElement a = parse_element(C.basis(), args[0]);
      ConfElement b = parse_element(C.basis(), args[1]);
      if (func == "lprod") {
        result = lambda_product(C, a, b).to_string(C.basis());
      } else {
        if (args.size() != 3) throw ParseError(func + " needs (a, b, n)");
        unsigned k = static_cast<unsigned>(parse_int_arg(args[2]));
        result = (func == "nprod" ? n_product(C, a, b, k) : braced_product(C, a, b, k))
                     .to_string(C.basis());
      }
    } else if (func == "central") {
      if (args.size() != 4) throw ParseError("central needs (x, n, m, b)");
      ConfElement x = parse_element(C.basis(), args[0]);
      unsigned n = static_cast<unsigned>(parse_int_arg(args[1]));
      int m = parse_int_arg(args[2]);
      CentralElement u = CentralElement::basis_term(m, args[3]);
      C.index_of(args[3]);  // validate symbol
      result = central_action(C, x, n, u).to_string();
    } else {
      throw ParseError("unknown eval function: " + func);
    }
  }

  CmdResult out;
  Json cert;
  cert["command"] = "eval";
  cert["object"] = object;
  cert["expression"] = expression;
  cert["inputs_digest"] = object_digest(ws, object);
  cert["result"] = result;
  auto t1 = std::chrono::steady_clock::now();
  cert["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  out.certificate = cert;
  out.text = result + "\n";
  return out;
}

CmdResult cmd_growth(const Workspace& ws, const std::string& object,
                     const std::vector<std::string>& generators, int n_max) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<int> ranks;
  if (auto it = ws.ambients.find(object); it != ws.ambients.end()) {
    if (generators.empty())
      throw ParseError("growth in a Cend ambient needs --generators");
    std::vector<MatrixConfElem> gens;
    for (const auto& g : generators) gens.push_back(parse_matrix_element(it->second.n, g));
    ranks = growth_profile_cend(it->second.n, gens, n_max);
  } else {
    const ConfAlgebra& C = require_algebra(ws, object);
    std::vector<ConfElement> gens;
    if (generators.empty())
      for (const auto& b : C.basis()) gens.push_back(ConfElement::symbol(b));
    else
      for (const auto& g : generators) gens.push_back(parse_element(C.basis(), g));
    ranks = growth_profile(C, gens, n_max);
  }

  CmdResult out;
  Json cert;
  cert["command"] = "growth";
  cert["object"] = object;
  cert["n_max"] = n_max;
  cert["generators"] = generators;
  cert["inputs_digest"] = object_digest(ws, object);
  cert["ranks"] = ranks;
  auto t1 = std::chrono::steady_clock::now();
  cert["timing_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  out.certificate = cert;
  std::ostringstream text;
  text << "rank V(n) for n = 1.." << n_max << ":";
  for (int r : ranks) text << " " << r;
  text << "\n";
  out.text = text.str();
  return out;
}

}  // namespace confalg
