#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "graphonlab/density.hpp"
#include "graphonlab/graph_spec.hpp"
#include "graphonlab/graphon.hpp"

namespace graphonlab {

struct parse_error : error {
  int line;
  int col;
  parse_error(int l, int c, const std::string& what)
      : error(std::to_string(l) + ":" + std::to_string(c) + ": " + what),
        line(l),
        col(c) {}
};

struct compatibility_error : error {
  explicit compatibility_error(const std::string& what) : error(what) {}
};

// ---- expression AST ---------------------------------------------------------

// Density expression: a real constant, a graph atom, or sums, products and
// formal fractions of subexpressions.  Sums/products are binary and
// left-associated by the parser; fractions are interpreted by
// cross-multiplication at constraint level.
struct DensityExpr {
  enum class Kind { constant, graph, sum, product, fraction };

  Kind kind = Kind::constant;
  double value = 0.0;
  std::string graph;
  std::vector<DensityExpr> kids;

  static DensityExpr constant(double v) {
    DensityExpr e;
    e.kind = Kind::constant;
    e.value = v;
    return e;
  }
  static DensityExpr atom(std::string name) {
    DensityExpr e;
    e.kind = Kind::graph;
    e.graph = std::move(name);
    return e;
  }
  static DensityExpr node(Kind k, DensityExpr a, DensityExpr b) {
    DensityExpr e;
    e.kind = k;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
  }

  void collect_atoms(std::vector<std::string>& out) const {
    if (kind == Kind::graph) out.push_back(graph);
    for (const auto& k : kids) k.collect_atoms(out);
  }

  friend bool operator==(const DensityExpr& a, const DensityExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::constant: return a.value == b.value;
      case Kind::graph: return a.graph == b.graph;
      default: return a.kids == b.kids;
    }
  }
};

struct Constraint {
  std::string name;
  DensityExpr lhs;
  DensityExpr rhs;

  // Cross-multiplied form: fractions at the top level of either side turn
  // D1/D1' = D2/D2' into D1*D2' = D2*D1'.
  std::pair<DensityExpr, DensityExpr> normalized() const {
    const bool lf = lhs.kind == DensityExpr::Kind::fraction;
    const bool rf = rhs.kind == DensityExpr::Kind::fraction;
    if (!lf && !rf) return {lhs, rhs};
    const DensityExpr& ln = lf ? lhs.kids[0] : lhs;
    const DensityExpr& rn = rf ? rhs.kids[0] : rhs;
    DensityExpr left = rf ? DensityExpr::node(DensityExpr::Kind::product, ln, rhs.kids[1])
                          : ln;
    DensityExpr right = lf ? DensityExpr::node(DensityExpr::Kind::product, rn, lhs.kids[1])
                           : rn;
    return {left, right};
  }

  friend bool operator==(const Constraint& a, const Constraint& b) {
    return a.name == b.name && a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

// A parsed constraint file: graph definitions plus constraints, with the
// symbol table used to resolve graph atoms (builtins + file definitions).
struct ConstraintFile {
  std::vector<GraphSpec> graphs;          // in declaration order
  std::vector<Constraint> constraints;
  std::map<std::string, GraphSpec> symbols;

  const GraphSpec& resolve(const std::string& name) const {
    auto it = symbols.find(name);
    if (it == symbols.end()) throw error("unknown graph atom: " + name);
    return it->second;
  }
};

inline std::map<std::string, GraphSpec> builtin_graphs() {
  std::map<std::string, GraphSpec> m;
  for (int n = 1; n <= 4; ++n) {
    GraphSpec k = complete_graph(n);
    m[k.name()] = k;
  }
  m["N2"] = empty_graph(2);
  m["N3"] = empty_graph(3);
  m["P3"] = path_graph(3);
  m["C4"] = cycle_graph(4);
  m["C5"] = cycle_graph(5);
  return m;
}

// ---- lexer -------------------------------------------------------------------

namespace detail {

struct Token {
  enum class Type { ident, number, string, punct, eof };
  Type type = Type::eof;
  std::string text;
  double number = 0.0;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }
  bool at(const std::string& punct) const {
    return tok_.type == Token::Type::punct && tok_.text == punct;
  }
  bool at_ident(const std::string& word) const {
    return tok_.type == Token::Type::ident && tok_.text == word;
  }
  Token expect_punct(const std::string& p) {
    if (!at(p)) fail("expected '" + p + "'");
    return take();
  }
  Token expect_ident() {
    if (tok_.type != Token::Type::ident) fail("expected identifier");
    return take();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(tok_.line, tok_.col, msg);
  }

 private:
  void advance() {
    skip_space();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::Type::eof;
      tok_.text = "<eof>";
      return;
    }
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_')) {
        word += src_[pos_];
        bump();
      }
      tok_.type = Token::Type::ident;
      tok_.text = word;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos_ + 1 < src_.size() &&
         std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
      std::string num;
      while (pos_ < src_.size() &&
             (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '.' || src_[pos_] == 'e' || src_[pos_] == 'E' ||
              ((src_[pos_] == '+' || src_[pos_] == '-') && !num.empty() &&
               (num.back() == 'e' || num.back() == 'E')))) {
        num += src_[pos_];
        bump();
      }
      try {
        tok_.number = std::stod(num);
      } catch (const std::exception&) {
        throw parse_error(tok_.line, tok_.col, "malformed number: " + num);
      }
      tok_.type = Token::Type::number;
      tok_.text = num;
      return;
    }
    if (c == '"') {
      bump();
      std::string s;
      while (pos_ < src_.size() && src_[pos_] != '"') {
        if (src_[pos_] == '\n') throw parse_error(tok_.line, tok_.col, "unterminated string");
        s += src_[pos_];
        bump();
      }
      if (pos_ >= src_.size()) throw parse_error(tok_.line, tok_.col, "unterminated string");
      bump();  // closing quote
      tok_.type = Token::Type::string;
      tok_.text = s;
      return;
    }
    tok_.type = Token::Type::punct;
    tok_.text = std::string(1, c);
    bump();
  }

  void skip_space() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        bump();
      if (pos_ < src_.size() && src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
        continue;
      }
      return;
    }
  }

  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

}  // namespace detail

// ---- parser ------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {
    file_.symbols = builtin_graphs();
  }

  ConstraintFile parse() {
    while (lex_.peek().type != Token::Type::eof) {
      if (lex_.at_ident("graph")) {
        parse_graph();
      } else if (lex_.at_ident("constraint")) {
        parse_constraint();
      } else {
        lex_.fail("expected 'graph' or 'constraint'");
      }
    }
    return std::move(file_);
  }

 private:
  void parse_graph() {
    lex_.take();  // graph
    const Token name = lex_.expect_ident();
    lex_.expect_punct("{");
    Token count;
    if (!lex_.at_ident("vertices"))
      lex_.fail("graph body must start with 'vertices'");
    lex_.take();
    count = lex_.take();
    if (count.type != Token::Type::number || count.number < 1 ||
        count.number != std::floor(count.number))
      throw parse_error(count.line, count.col, "vertex count must be a positive integer");
    lex_.expect_punct(";");

    const int order = static_cast<int>(count.number);
    EdgeState default_state = EdgeState::nonedge;
    std::vector<int> roots;
    std::vector<std::pair<int, std::string>> labels;
    std::vector<std::tuple<int, int, EdgeState>> pairs;
    while (!lex_.at("}")) {
      if (lex_.at_ident("default")) {
        lex_.take();
        default_state = state_of(lex_.expect_ident());
        lex_.expect_punct(";");
      } else if (lex_.at_ident("roots")) {
        lex_.take();
        while (lex_.peek().type == Token::Type::number)
          roots.push_back(vertex_index(lex_.take(), order));
        lex_.expect_punct(";");
      } else if (lex_.at_ident("label")) {
        lex_.take();
        const int v = vertex_index(lex_.take(), order);
        labels.emplace_back(v, lex_.expect_ident().text);
        lex_.expect_punct(";");
      } else if (lex_.at_ident("edge") || lex_.at_ident("nonedge") ||
                 lex_.at_ident("free")) {
        const EdgeState state = state_of(lex_.take());
        bool any = false;
        while (lex_.peek().type == Token::Type::number) {
          const Token a = lex_.take();
          lex_.expect_punct("-");
          const Token b = lex_.take();
          const int i = vertex_index(a, order);
          const int j = vertex_index(b, order);
          if (i == j) throw parse_error(a.line, a.col, "self-loops are not allowed");
          pairs.emplace_back(i, j, state);
          any = true;
        }
        if (!any) lex_.fail("expected at least one vertex pair");
        lex_.expect_punct(";");
      } else {
        lex_.fail("expected a graph statement");
      }
    }
    lex_.expect_punct("}");

    GraphSpec g(name.text, order, default_state);
    try {
      g.set_roots(roots);
      for (const auto& [v, part] : labels) g.set_label(v, part);
      for (const auto& [i, j, state] : pairs) g.set_state(i, j, state);
    } catch (const error& e) {
      throw parse_error(name.line, name.col, e.what());
    }
    if (g.decorated()) {
      for (int v = 0; v < g.order(); ++v)
        if (g.label(v).empty())
          throw parse_error(name.line, name.col,
                            "decorated graph must label every vertex");
    }
    file_.graphs.push_back(g);
    file_.symbols[name.text] = g;
  }

  static EdgeState state_of(const Token& t) {
    if (t.text == "edge") return EdgeState::edge;
    if (t.text == "nonedge") return EdgeState::nonedge;
    if (t.text == "free") return EdgeState::free_pair;
    throw parse_error(t.line, t.col, "expected edge, nonedge or free");
  }

  static int vertex_index(const Token& t, int order) {
    if (t.type != Token::Type::number || t.number < 1 ||
        t.number != std::floor(t.number) || t.number > order)
      throw parse_error(t.line, t.col, "vertex index out of range");
    return static_cast<int>(t.number) - 1;
  }

  void parse_constraint() {
    const Token kw = lex_.take();  // constraint
    Constraint c;
    if (lex_.peek().type == Token::Type::string)
      c.name = lex_.take().text;
    else
      c.name = "c" + std::to_string(file_.constraints.size() + 1);
    lex_.expect_punct(":");
    c.lhs = parse_expr();
    lex_.expect_punct("=");
    c.rhs = parse_expr();
    lex_.expect_punct(";");
    validate_constraint(c, kw);
    file_.constraints.push_back(std::move(c));
  }

  DensityExpr parse_expr() {
    DensityExpr e = parse_term();
    while (lex_.at("+")) {
      lex_.take();
      e = DensityExpr::node(DensityExpr::Kind::sum, std::move(e), parse_term());
    }
    return e;
  }

  DensityExpr parse_term() {
    DensityExpr e = parse_factor();
    for (;;) {
      if (lex_.at("*")) {
        lex_.take();
        e = DensityExpr::node(DensityExpr::Kind::product, std::move(e), parse_factor());
      } else if (lex_.at("/")) {
        lex_.take();
        e = DensityExpr::node(DensityExpr::Kind::fraction, std::move(e), parse_factor());
      } else {
        return e;
      }
    }
  }

  DensityExpr parse_factor() {
    const Token& t = lex_.peek();
    if (t.type == Token::Type::number) return DensityExpr::constant(lex_.take().number);
    if (t.type == Token::Type::ident) {
      const Token id = lex_.take();
      if (file_.symbols.find(id.text) == file_.symbols.end())
        throw parse_error(id.line, id.col, "unknown graph atom: " + id.text);
      return DensityExpr::atom(id.text);
    }
    if (lex_.at("(")) {
      lex_.take();
      DensityExpr e = parse_expr();
      lex_.expect_punct(")");
      return e;
    }
    lex_.fail("expected a number, graph name or parenthesized expression");
  }

  // Root compatibility: every graph atom of a constraint must carry the same
  // number of roots and the same states and labels on the root set.
  void validate_constraint(const Constraint& c, const Token& at) {
    std::vector<std::string> names;
    c.lhs.collect_atoms(names);
    c.rhs.collect_atoms(names);
    if (names.empty()) return;
    const GraphSpec* ref = nullptr;
    for (const std::string& n : names) {
      const GraphSpec& g = file_.symbols.at(n);
      if (!ref) {
        ref = &g;
        continue;
      }
      const auto& ra = ref->roots();
      const auto& rb = g.roots();
      bool ok = ra.size() == rb.size();
      for (std::size_t a = 0; ok && a < ra.size(); ++a) {
        if (ref->decorated() != g.decorated()) ok = false;
        if (ok && ref->decorated() && ref->label(ra[a]) != g.label(rb[a])) ok = false;
        for (std::size_t b = a + 1; ok && b < ra.size(); ++b)
          ok = ref->state(ra[a], ra[b]) == g.state(rb[a], rb[b]);
      }
      if (!ok)
        throw compatibility_error(std::to_string(at.line) + ":" +
                                  std::to_string(at.col) +
                                  ": incompatible rooted atoms in constraint '" +
                                  c.name + "' (" + ref->name() + " vs " + g.name() + ")");
    }
    // fractions announce rooted expressions; a fraction below the top level
    // of a side has no cross-multiplied reading
    auto no_nested_fraction = [&](const DensityExpr& e, auto&& self) -> void {
      for (const auto& k : e.kids) {
        if (k.kind == DensityExpr::Kind::fraction &&
            !(k.kids[0].kind == DensityExpr::Kind::constant &&
              k.kids[1].kind == DensityExpr::Kind::constant))
          throw compatibility_error(
              std::to_string(at.line) + ":" + std::to_string(at.col) +
              ": non-constant fraction must be the top level of a side");
        self(k, self);
      }
    };
    no_nested_fraction(c.lhs, no_nested_fraction);
    no_nested_fraction(c.rhs, no_nested_fraction);
  }

  Lexer lex_;
  ConstraintFile file_;
};

}  // namespace detail

inline ConstraintFile parse_constraints(const std::string& text) {
  return detail::Parser(text).parse();
}

// ---- printer -----------------------------------------------------------------

namespace detail {

inline int precedence(DensityExpr::Kind k) {
  switch (k) {
    case DensityExpr::Kind::sum: return 1;
    case DensityExpr::Kind::product:
    case DensityExpr::Kind::fraction: return 2;
    default: return 3;
  }
}

inline void print_expr(std::ostringstream& os, const DensityExpr& e, int parent_prec,
                       bool right_side) {
  const int prec = precedence(e.kind);
  const bool parens = prec < parent_prec || (prec == parent_prec && right_side);
  if (parens) os << "(";
  switch (e.kind) {
    case DensityExpr::Kind::constant: {
      std::ostringstream num;
      num.precision(12);
      num << e.value;
      os << num.str();
      break;
    }
    case DensityExpr::Kind::graph:
      os << e.graph;
      break;
    case DensityExpr::Kind::sum:
      print_expr(os, e.kids[0], prec, false);
      os << " + ";
      print_expr(os, e.kids[1], prec, true);
      break;
    case DensityExpr::Kind::product:
      print_expr(os, e.kids[0], prec, false);
      os << " * ";
      print_expr(os, e.kids[1], prec, true);
      break;
    case DensityExpr::Kind::fraction:
      print_expr(os, e.kids[0], prec, false);
      os << " / ";
      print_expr(os, e.kids[1], prec, true);
      break;
  }
  if (parens) os << ")";
}

}  // namespace detail

inline std::string print_expr(const DensityExpr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, 0, false);
  return os.str();
}

// Canonical text form; parsing it yields an equal file.
inline std::string print_constraints(const ConstraintFile& f) {
  std::ostringstream os;
  for (const GraphSpec& g : f.graphs) {
    os << "graph " << g.name() << " {\n";
    os << "  vertices " << g.order() << ";\n";
    os << "  default " << edge_state_name(g.default_state()) << ";\n";
    if (g.rooted()) {
      os << "  roots";
      for (int r : g.roots()) os << " " << (r + 1);
      os << ";\n";
    }
    if (g.decorated())
      for (int v = 0; v < g.order(); ++v)
        os << "  label " << (v + 1) << " " << g.label(v) << ";\n";
    for (EdgeState st : {EdgeState::edge, EdgeState::nonedge, EdgeState::free_pair}) {
      std::ostringstream row;
      bool any = false;
      for (int i = 0; i < g.order(); ++i)
        for (int j = i + 1; j < g.order(); ++j)
          if (g.state(i, j) == st && st != g.default_state()) {
            row << " " << (i + 1) << "-" << (j + 1);
            any = true;
          }
      if (any) os << "  " << edge_state_name(st) << row.str() << ";\n";
    }
    os << "}\n";
  }
  for (const Constraint& c : f.constraints) {
    os << "constraint \"" << c.name << "\" : " << print_expr(c.lhs) << " = "
       << print_expr(c.rhs) << ";\n";
  }
  return os.str();
}

// ---- evaluation ---------------------------------------------------------------

enum class Verdict { pass, fail, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct CheckReport {
  std::string name;
  DensityEstimate lhs;
  DensityEstimate rhs;
  double delta = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::pass;
  std::string detail;
};

inline Verdict classify(double delta, double tol, double sigma) {
  if (sigma > 0.0 && std::abs(delta - tol) <= 4.0 * sigma) return Verdict::inconclusive;
  return delta <= tol ? Verdict::pass : Verdict::fail;
}

namespace detail {

struct ExprValue {
  double value = 0.0;
  double sigma = 0.0;
};

// Recursive evaluation; graph atoms resolve through `leaf`.
template <class LeafFn>
ExprValue eval_expr(const DensityExpr& e, LeafFn&& leaf) {
  switch (e.kind) {
    case DensityExpr::Kind::constant:
      return {e.value, 0.0};
    case DensityExpr::Kind::graph:
      return leaf(e.graph);
    case DensityExpr::Kind::sum: {
      const ExprValue a = eval_expr(e.kids[0], leaf);
      const ExprValue b = eval_expr(e.kids[1], leaf);
      return {a.value + b.value, std::hypot(a.sigma, b.sigma)};
    }
    case DensityExpr::Kind::product: {
      const ExprValue a = eval_expr(e.kids[0], leaf);
      const ExprValue b = eval_expr(e.kids[1], leaf);
      return {a.value * b.value,
              std::hypot(a.sigma * b.value, b.sigma * a.value)};
    }
    case DensityExpr::Kind::fraction: {
      const ExprValue a = eval_expr(e.kids[0], leaf);
      const ExprValue b = eval_expr(e.kids[1], leaf);
      if (b.value == 0.0) throw error("division by zero in density expression");
      const double v = a.value / b.value;
      return {v, std::hypot(a.sigma / b.value, b.sigma * v / b.value)};
    }
  }
  throw error("unreachable expression kind");
}

}  // namespace detail

// Evaluates one constraint against a graphon.
//
// Unrooted constraints are checked as an equality of the two side values.
// Rooted constraints use the cross-multiplied form, checked in expectation
// over root tuples drawn from the root-conditioned measure and pointwise on
// a panel of such tuples.
inline CheckReport eval_constraint(const Constraint& c, const ConstraintFile& file,
                                   const Graphon& W, std::uint64_t budget, double tol,
                                   std::uint64_t seed, int panel_size = 64) {
  std::vector<std::string> atoms;
  c.lhs.collect_atoms(atoms);
  c.rhs.collect_atoms(atoms);

  const bool rooted = !atoms.empty() && file.resolve(atoms.front()).rooted();
  CheckReport report;
  report.name = c.name;
  report.tol = tol;

  if (!rooted) {
    std::map<std::string, DensityEstimate> cache;
    auto leaf = [&](const std::string& name) -> detail::ExprValue {
      auto it = cache.find(name);
      if (it == cache.end()) {
        const GraphSpec& g = file.resolve(name);
        DensityEstimate est;
        bool exact = false;
        if (!g.rooted() && g.order() <= 4) {
          try {
            est = density_quadrature(g, W);
            exact = true;
          } catch (const error&) {
            exact = false;
          }
        }
        if (!exact) est = density(g, W, budget, seed + std::hash<std::string>{}(name));
        it = cache.emplace(name, est).first;
      }
      return {it->second.value, it->second.std_error};
    };
    const detail::ExprValue lv = detail::eval_expr(c.lhs, leaf);
    const detail::ExprValue rv = detail::eval_expr(c.rhs, leaf);
    report.lhs = DensityEstimate{lv.value, lv.sigma, budget,
                                 lv.sigma == 0.0 ? DensityEstimate::Kind::quadrature
                                                 : DensityEstimate::Kind::monte_carlo};
    report.rhs = DensityEstimate{rv.value, rv.sigma, budget,
                                 rv.sigma == 0.0 ? DensityEstimate::Kind::quadrature
                                                 : DensityEstimate::Kind::monte_carlo};
    report.delta = std::abs(lv.value - rv.value);
    report.verdict = classify(report.delta, tol, std::hypot(lv.sigma, rv.sigma));
    return report;
  }

  // rooted: sample a panel of root tuples and check the cross-multiplied
  // equality pointwise and in expectation
  const auto [lhs_n, rhs_n] = c.normalized();
  const GraphSpec& proto = file.resolve(atoms.front());
  const std::uint64_t per_eval =
      std::max<std::uint64_t>(1024, budget / (static_cast<std::uint64_t>(panel_size) *
                                              std::max<std::size_t>(atoms.size(), 1)));
  double max_delta = 0.0, sum_delta = 0.0, max_sigma = 0.0;
  double lhs_mean = 0.0, rhs_mean = 0.0;
  for (int p = 0; p < panel_size; ++p) {
    const RootAssignment roots =
        sample_roots(proto, W, seed, static_cast<std::uint64_t>(p));
    std::map<std::string, DensityEstimate> cache;
    auto leaf = [&](const std::string& name) -> detail::ExprValue {
      auto it = cache.find(name);
      if (it == cache.end()) {
        const GraphSpec& g = file.resolve(name);
        RootAssignment adapted = roots;  // compatible atoms share root tuples
        const DensityEstimate est = rooted_density(
            g, W, adapted, per_eval,
            seed + 1000003 * static_cast<std::uint64_t>(p) +
                std::hash<std::string>{}(name));
        it = cache.emplace(name, est).first;
      }
      return {it->second.value, it->second.std_error};
    };
    const detail::ExprValue lv = detail::eval_expr(lhs_n, leaf);
    const detail::ExprValue rv = detail::eval_expr(rhs_n, leaf);
    const double d = std::abs(lv.value - rv.value);
    max_delta = std::max(max_delta, d);
    sum_delta += lv.value - rv.value;
    max_sigma = std::max(max_sigma, std::hypot(lv.sigma, rv.sigma));
    lhs_mean += lv.value;
    rhs_mean += rv.value;
  }
  lhs_mean /= panel_size;
  rhs_mean /= panel_size;
  report.lhs = DensityEstimate{lhs_mean, max_sigma, per_eval,
                               DensityEstimate::Kind::monte_carlo};
  report.rhs = DensityEstimate{rhs_mean, max_sigma, per_eval,
                               DensityEstimate::Kind::monte_carlo};
  report.delta = max_delta;
  report.detail = "pointwise max over " + std::to_string(panel_size) +
                  " root tuples; mean gap " +
                  std::to_string(sum_delta / panel_size);
  report.verdict = classify(max_delta, tol, max_sigma);
  return report;
}

}  // namespace graphonlab
