#include "vexm/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace vexm {
namespace {

struct Token {
  enum class Type { kLParen, kRParen, kSymbol, kEnd };
  Type type = Type::kEnd;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_ws_and_comments();
    tok_.line = line_;
    tok_.column = col_;
    if (pos_ >= src_.size()) {
      tok_.type = Token::Type::kEnd;
      tok_.text.clear();
      return;
    }
    char c = src_[pos_];
    if (c == '(') {
      tok_ = {Token::Type::kLParen, "(", line_, col_};
      bump();
      return;
    }
    if (c == ')') {
      tok_ = {Token::Type::kRParen, ")", line_, col_};
      bump();
      return;
    }
    std::string text;
    while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_])) &&
           src_[pos_] != '(' && src_[pos_] != ')' && src_[pos_] != ';') {
      text.push_back(src_[pos_]);
      bump();
    }
    tok_.type = Token::Type::kSymbol;
    tok_.text = text;
  }

  void skip_ws_and_comments() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ';') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
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
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Lexer& lex() { return lex_; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.column);
  }

  Token expect(Token::Type type, const char* what) {
    Token t = lex_.next();
    if (t.type != type) fail(std::string("expected ") + what + ", got '" + t.text + "'", t);
    return t;
  }

  Token expect_symbol(const std::string& text) {
    Token t = expect(Token::Type::kSymbol, "symbol");
    if (lower(t.text) != text) fail("expected '" + text + "', got '" + t.text + "'", t);
    return t;
  }

  bool peek_lparen() { return lex_.peek().type == Token::Type::kLParen; }
  bool peek_rparen() { return lex_.peek().type == Token::Type::kRParen; }

  // Parses `name+ - type` groups until ')'. Names keep case; types keep case.
  std::vector<std::pair<std::string, std::string>> typed_list(const char* what) {
    std::vector<std::pair<std::string, std::string>> out;
    std::vector<std::string> pending;
    while (!peek_rparen()) {
      Token t = expect(Token::Type::kSymbol, what);
      if (t.text == "-") {
        Token ty = expect(Token::Type::kSymbol, "type name");
        if (pending.empty()) fail("dangling '-' with no names before it", t);
        for (auto& n : pending) out.emplace_back(n, ty.text);
        pending.clear();
      } else {
        pending.push_back(t.text);
      }
    }
    for (auto& n : pending) out.emplace_back(n, "object");
    return out;
  }

  void check_supported(const Token& head) {
    static const char* kUnsupported[] = {"or",     "forall", "exists", "when",
                                         "imply",  "oneof",  ">=",     "<=",
                                         "increase", "decrease", "assign"};
    std::string h = lower(head.text);
    for (const char* u : kUnsupported)
      if (h == u) fail("unsupported feature '" + head.text + "' (conjunctive STRIPS only)", head);
  }

 private:
  Lexer lex_;
};

AtomTemplate parse_atom_template(Parser& p, const Domain& d, bool in_effect,
                                 const std::vector<Parameter>& params, bool* negated) {
  Token open = p.expect(Token::Type::kLParen, "'('");
  Token head = p.expect(Token::Type::kSymbol, "predicate");
  if (negated) *negated = false;
  if (lower(head.text) == "not") {
    if (!in_effect || !negated)
      p.fail("negation is only supported in effects (delete literals)", head);
    *negated = true;
    AtomTemplate inner = parse_atom_template(p, d, false, params, nullptr);
    p.expect(Token::Type::kRParen, "')'");
    return inner;
  }
  p.check_supported(head);
  const RelationName* rel = d.find_relation(head.text);
  if (!rel) p.fail("unknown predicate '" + head.text + "'", head);
  AtomTemplate atom;
  atom.relation = head.text;
  std::vector<std::string> args;
  while (!p.peek_rparen()) {
    Token a = p.expect(Token::Type::kSymbol, "argument");
    args.push_back(a.text);
  }
  if (args.size() != 2)
    p.fail("predicate '" + head.text + "' used with arity " + std::to_string(args.size()) +
               " (relations are binary)",
           open);
  auto known = [&](const std::string& a) {
    if (!a.empty() && a[0] == '?') {
      for (const auto& prm : params)
        if (prm.name == a) return true;
      return false;
    }
    for (const auto& c : d.constants)
      if (c.id == a) return true;
    return false;
  };
  for (const auto& a : args)
    if (!known(a)) p.fail("unknown parameter or constant '" + a + "'", open);
  atom.subject = args[0];
  atom.object = args[1];
  p.expect(Token::Type::kRParen, "')'");
  return atom;
}

// `(and ...)` or a single atom.
void parse_condition(Parser& p, const Domain& d, const std::vector<Parameter>& params,
                     bool in_effect, std::vector<AtomTemplate>* pos,
                     std::vector<AtomTemplate>* neg) {
  Token open = p.expect(Token::Type::kLParen, "'('");
  Token head = p.lex().peek();
  if (head.type == Token::Type::kSymbol && lower(head.text) == "and") {
    p.lex().next();
    while (!p.peek_rparen()) {
      bool negated = false;
      AtomTemplate a = parse_atom_template(p, d, in_effect, params, in_effect ? &negated : nullptr);
      (negated ? neg : pos)->push_back(a);
    }
    p.expect(Token::Type::kRParen, "')'");
    return;
  }
  if (head.type == Token::Type::kSymbol) p.check_supported(head);
  // Single literal without `and`: re-parse from the head we already consumed
  // the '(' of.
  if (head.type != Token::Type::kSymbol) p.fail("expected condition", head);
  bool negated = false;
  // Emulate parse_atom_template body after the consumed '('.
  Token h = p.lex().next();
  if (lower(h.text) == "not") {
    if (!in_effect) p.fail("negation is only supported in effects (delete literals)", h);
    negated = true;
    AtomTemplate inner = parse_atom_template(p, d, false, params, nullptr);
    p.expect(Token::Type::kRParen, "')'");
    neg->push_back(inner);
    return;
  }
  const RelationName* rel = d.find_relation(h.text);
  if (!rel) p.fail("unknown predicate '" + h.text + "'", h);
  std::vector<std::string> args;
  while (!p.peek_rparen()) args.push_back(p.expect(Token::Type::kSymbol, "argument").text);
  if (args.size() != 2)
    p.fail("predicate '" + h.text + "' used with arity " + std::to_string(args.size()) +
               " (relations are binary)",
           h);
  p.expect(Token::Type::kRParen, "')'");
  AtomTemplate a{h.text, args[0], args[1]};
  pos->push_back(a);
}

bool is_robot_side(const Domain& d, const std::string& type) {
  return d.is_subtype(type, "robot") || d.is_subtype(type, "agentpart");
}

// An argument is robot-side if it is a constant of a robot-side type or a
// parameter declared with one.
bool arg_is_robot_side(const Domain& d, const std::vector<Parameter>& params,
                       const std::string& arg) {
  if (!arg.empty() && arg[0] == '?') {
    for (const auto& prm : params)
      if (prm.name == arg) return is_robot_side(d, prm.type);
    return false;
  }
  for (const auto& c : d.constants)
    if (c.id == arg) return is_robot_side(d, c.type);
  return false;
}

void classify_action(const Domain& d, ActionSpec* spec) {
  bool touches_world = false;
  auto scan = [&](const std::vector<AtomTemplate>& atoms) {
    for (const auto& a : atoms) {
      bool robot_side = arg_is_robot_side(d, spec->params, a.subject) ||
                        arg_is_robot_side(d, spec->params, a.object);
      if (!robot_side) touches_world = true;
    }
  };
  scan(spec->add);
  scan(spec->del);
  spec->kind = touches_world ? ActionSpec::Kind::kSupply : ActionSpec::Kind::kEgocentric;
  spec->durable = touches_world;
  std::string n = lower(spec->name);
  spec->visual_search = (n == "search" || n == "localize");
}

void finalize_classes(Domain* d, const std::vector<std::string>& declaration_order) {
  std::set<std::string> parents;
  for (const auto& [t, p] : d->type_parent) parents.insert(p);
  std::set<std::string> seen;
  for (const auto& t : declaration_order) {
    if (parents.count(t) || seen.count(t)) continue;  // internal node or dup
    seen.insert(t);
    ObjectClass cls;
    cls.name = t;
    cls.graspable = d->is_subtype(t, "item");
    cls.detectable = !d->is_subtype(t, "robot");
    d->classes.push_back(cls);
  }
}

void finalize_relation_domains(Domain* d,
                               const std::vector<std::pair<std::string, std::string>>& sig) {
  // sig holds per-relation (subject-type, object-type); expand to leaf pairs.
  for (size_t i = 0; i < d->relations.size(); ++i) {
    auto& rel = d->relations[i];
    const auto& [ts, to] = sig[i];
    for (const auto& cs : d->classes)
      for (const auto& co : d->classes)
        if (d->is_subtype(cs.name, ts) && d->is_subtype(co.name, to))
          rel.domain_pairs.insert({cs.name, co.name});
  }
}

}  // namespace

Domain parse_domain(const std::string& source) {
  Parser p(source);
  Domain d;
  std::vector<std::string> type_order;
  std::vector<std::pair<std::string, std::string>> relation_sig;

  p.expect(Token::Type::kLParen, "'('");
  p.expect_symbol("define");
  p.expect(Token::Type::kLParen, "'('");
  p.expect_symbol("domain");
  d.name = p.expect(Token::Type::kSymbol, "domain name").text;
  p.expect(Token::Type::kRParen, "')'");

  while (!p.peek_rparen()) {
    p.expect(Token::Type::kLParen, "'('");
    Token section = p.expect(Token::Type::kSymbol, "section");
    std::string sec = lower(section.text);
    if (sec == ":requirements") {
      while (!p.peek_rparen()) {
        Token r = p.expect(Token::Type::kSymbol, "requirement");
        std::string rq = lower(r.text);
        if (rq != ":strips" && rq != ":typing")
          p.fail("unsupported requirement '" + r.text + "'", r);
      }
      p.expect(Token::Type::kRParen, "')'");
    } else if (sec == ":types") {
      auto list = p.typed_list("type name");
      for (auto& [n, parent] : list) {
        d.type_parent[n] = parent;
        type_order.push_back(n);
        if (parent != "object" && !d.type_parent.count(parent)) {
          // Forward-declared parent; registered when (if) it appears. Give it
          // a root entry so is_subtype terminates.
          d.type_parent.emplace(parent, "object");
        }
      }
      p.expect(Token::Type::kRParen, "')'");
    } else if (sec == ":constants") {
      auto list = p.typed_list("constant name");
      for (auto& [n, t] : list) {
        if (!d.is_type(t)) p.fail("unknown type '" + t + "'", section);
        d.constants.push_back({n, t});
      }
      p.expect(Token::Type::kRParen, "')'");
    } else if (sec == ":predicates") {
      while (!p.peek_rparen()) {
        p.expect(Token::Type::kLParen, "'('");
        Token name = p.expect(Token::Type::kSymbol, "predicate name");
        auto vars = p.typed_list("parameter");
        if (vars.size() != 2)
          p.fail("predicate '" + name.text + "' declared with arity " +
                     std::to_string(vars.size()) + " (relations are binary)",
                 name);
        for (auto& [v, t] : vars) {
          if (v.empty() || v[0] != '?') p.fail("predicate parameter must start with '?'", name);
          if (!d.is_type(t)) p.fail("unknown type '" + t + "'", name);
        }
        RelationName rel;
        rel.name = name.text;
        d.relations.push_back(rel);
        relation_sig.emplace_back(vars[0].second, vars[1].second);
        p.expect(Token::Type::kRParen, "')'");
      }
      p.expect(Token::Type::kRParen, "')'");
    } else if (sec == ":action") {
      ActionSpec spec;
      spec.name = p.expect(Token::Type::kSymbol, "action name").text;
      while (!p.peek_rparen()) {
        Token key = p.expect(Token::Type::kSymbol, "action section");
        std::string k = lower(key.text);
        if (k == ":parameters") {
          p.expect(Token::Type::kLParen, "'('");
          auto vars = p.typed_list("parameter");
          for (auto& [v, t] : vars) {
            if (v.empty() || v[0] != '?') p.fail("parameter must start with '?'", key);
            if (!d.is_type(t)) p.fail("unknown type '" + t + "'", key);
            spec.params.push_back({v, t});
          }
          p.expect(Token::Type::kRParen, "')'");
        } else if (k == ":precondition") {
          std::vector<AtomTemplate> neg;
          parse_condition(p, d, spec.params, false, &spec.pre, &neg);
        } else if (k == ":effect") {
          parse_condition(p, d, spec.params, true, &spec.add, &spec.del);
        } else {
          p.fail("unsupported action section '" + key.text + "'", key);
        }
      }
      p.expect(Token::Type::kRParen, "')'");
      classify_action(d, &spec);
      d.actions.push_back(spec);
    } else {
      p.fail("unsupported section '" + section.text + "'", section);
    }
  }
  p.expect(Token::Type::kRParen, "')'");
  Token end = p.lex().next();
  if (end.type != Token::Type::kEnd)
    throw ParseError("trailing input after domain", end.line, end.column);

  if (d.classes.empty()) {
    finalize_classes(&d, type_order);
    finalize_relation_domains(&d, relation_sig);
  }
  return d;
}

Problem parse_problem(const std::string& source, const Domain& domain) {
  Parser p(source);
  Problem prob;
  p.expect(Token::Type::kLParen, "'('");
  p.expect_symbol("define");
  p.expect(Token::Type::kLParen, "'('");
  p.expect_symbol("problem");
  prob.name = p.expect(Token::Type::kSymbol, "problem name").text;
  p.expect(Token::Type::kRParen, "')'");

  auto parse_ground_atom = [&](const std::vector<Instance>& instances) -> RelationAtom {
    Token open = p.expect(Token::Type::kLParen, "'('");
    Token head = p.expect(Token::Type::kSymbol, "predicate");
    p.check_supported(head);
    std::vector<std::string> args;
    while (!p.peek_rparen()) args.push_back(p.expect(Token::Type::kSymbol, "argument").text);
    p.expect(Token::Type::kRParen, "')'");
    if (args.size() != 2)
      p.fail("predicate '" + head.text + "' used with arity " + std::to_string(args.size()),
             open);
    RelationAtom atom{head.text, args[0], args[1]};
    if (auto err = check_atom(domain, instances, atom)) p.fail(*err, open);
    return atom;
  };

  while (!p.peek_rparen()) {
    p.expect(Token::Type::kLParen, "'('");
    Token section = p.expect(Token::Type::kSymbol, "section");
    std::string sec = lower(section.text);
    if (sec == ":domain") {
      prob.domain_name = p.expect(Token::Type::kSymbol, "domain name").text;
      if (prob.domain_name != domain.name)
        p.fail("problem references domain '" + prob.domain_name + "', expected '" + domain.name +
                   "'",
               section);
      p.expect(Token::Type::kRParen, "')'");
    } else if (sec == ":objects") {
      auto list = p.typed_list("object name");
      for (auto& [n, t] : list) {
        if (!domain.is_type(t)) p.fail("unknown type '" + t + "'", section);
        prob.objects.push_back({n, t});
      }
      p.expect(Token::Type::kRParen, "')'");
    } else if (sec == ":init") {
      auto instances = all_instances(domain, prob);
      while (!p.peek_rparen()) prob.init.insert(parse_ground_atom(instances));
      p.expect(Token::Type::kRParen, "')'");
    } else if (sec == ":goal") {
      auto instances = all_instances(domain, prob);
      p.expect(Token::Type::kLParen, "'('");
      Token head = p.expect(Token::Type::kSymbol, "goal condition");
      if (lower(head.text) == "and") {
        while (!p.peek_rparen()) prob.goal.insert(parse_ground_atom(instances));
        p.expect(Token::Type::kRParen, "')'");
      } else {
        p.check_supported(head);
        std::vector<std::string> args;
        while (!p.peek_rparen()) args.push_back(p.expect(Token::Type::kSymbol, "argument").text);
        p.expect(Token::Type::kRParen, "')'");
        if (args.size() != 2) p.fail("goal predicate arity must be 2", head);
        RelationAtom atom{head.text, args[0], args[1]};
        if (auto err = check_atom(domain, instances, atom)) p.fail(*err, head);
        prob.goal.insert(atom);
      }
      p.expect(Token::Type::kRParen, "')'");
    } else {
      p.fail("unsupported section '" + section.text + "'", section);
    }
  }
  p.expect(Token::Type::kRParen, "')'");
  Token end = p.lex().next();
  if (end.type != Token::Type::kEnd)
    throw ParseError("trailing input after problem", end.line, end.column);
  return prob;
}

namespace {

void print_typed_list(std::ostringstream& os, const std::vector<Instance>& items) {
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) os << " ";
    os << items[i].id << " - " << items[i].type;
  }
}

void print_atoms(std::ostringstream& os, const std::vector<AtomTemplate>& atoms, bool negate,
                 const std::string& indent) {
  for (const auto& a : atoms) {
    os << indent;
    if (negate) os << "(not ";
    os << "(" << a.relation << " " << a.subject << " " << a.object << ")";
    if (negate) os << ")";
    os << "\n";
  }
}

}  // namespace

std::string pretty_print(const Domain& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  os << "  (:requirements :strips :typing)\n";
  // Internal types first (sorted), then leaf types in class-declaration
  // order, so that a re-parse reproduces the class list exactly.
  os << "  (:types";
  std::set<std::string> leaf_names;
  for (const auto& c : d.classes) leaf_names.insert(c.name);
  for (const auto& [t, parent] : d.type_parent)
    if (!leaf_names.count(t)) os << "\n    " << t << " - " << parent;
  for (const auto& c : d.classes) {
    auto it = d.type_parent.find(c.name);
    os << "\n    " << c.name << " - " << (it == d.type_parent.end() ? "object" : it->second);
  }
  os << ")\n";
  if (!d.constants.empty()) {
    os << "  (:constants ";
    print_typed_list(os, d.constants);
    os << ")\n";
  }
  os << "  (:predicates\n";
  for (size_t i = 0; i < d.relations.size(); ++i) {
    // Reconstruct the tightest single (subject, object) type pair covering
    // the domain pairs: fall back to `object` when mixed.
    const auto& rel = d.relations[i];
    auto cover = [&](bool subject) -> std::string {
      std::set<std::string> leaves;
      for (const auto& pr : rel.domain_pairs) leaves.insert(subject ? pr.first : pr.second);
      // Try every declared type; pick the most specific one covering all.
      std::string best = "object";
      size_t best_extent = d.classes.size() + 1;
      for (const auto& [t, parent] : d.type_parent) {
        bool covers_all = true;
        size_t extent = 0;
        for (const auto& c : d.classes)
          if (d.is_subtype(c.name, t)) ++extent;
        for (const auto& l : leaves)
          if (!d.is_subtype(l, t)) {
            covers_all = false;
            break;
          }
        if (covers_all && extent < best_extent) {
          best = t;
          best_extent = extent;
        }
      }
      return best;
    };
    os << "    (" << rel.name << " ?x - " << cover(true) << " ?y - " << cover(false) << ")\n";
  }
  os << "  )\n";
  for (const auto& a : d.actions) {
    os << "  (:action " << a.name << "\n    :parameters (";
    for (size_t i = 0; i < a.params.size(); ++i) {
      if (i) os << " ";
      os << a.params[i].name << " - " << a.params[i].type;
    }
    os << ")\n    :precondition (and\n";
    print_atoms(os, a.pre, false, "      ");
    os << "    )\n    :effect (and\n";
    print_atoms(os, a.add, false, "      ");
    print_atoms(os, a.del, true, "      ");
    os << "    )\n  )\n";
  }
  os << ")\n";
  return os.str();
}

std::string pretty_print(const Problem& p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n";
  os << "  (:domain " << p.domain_name << ")\n";
  os << "  (:objects ";
  print_typed_list(os, p.objects);
  os << ")\n  (:init\n";
  for (const auto& a : p.init)
    os << "    (" << a.relation << " " << a.subject << " " << a.object << ")\n";
  os << "  )\n  (:goal (and\n";
  for (const auto& a : p.goal)
    os << "    (" << a.relation << " " << a.subject << " " << a.object << ")\n";
  os << "  ))\n)\n";
  return os.str();
}

std::string format_plan(const std::vector<GroundAction>& actions) {
  std::ostringstream os;
  for (size_t t = 0; t < actions.size(); ++t) os << t << " " << actions[t].str() << "\n";
  return os.str();
}

std::vector<GroundAction> parse_plan_text(const std::string& text) {
  std::vector<GroundAction> out;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long t = 0;
    std::string call;
    if (!(ls >> t >> call)) throw ParseError("malformed plan line", lineno, 1);
    auto lp = call.find('(');
    auto rp = call.rfind(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp)
      throw ParseError("malformed action call '" + call + "'", lineno, 1);
    GroundAction a;
    a.name = call.substr(0, lp);
    std::string args = call.substr(lp + 1, rp - lp - 1);
    std::string cur;
    for (char c : args) {
      if (c == ',') {
        if (!cur.empty()) a.args.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur.push_back(c);
      }
    }
    if (!cur.empty()) a.args.push_back(cur);
    out.push_back(a);
  }
  return out;
}

}  // namespace vexm
