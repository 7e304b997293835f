#include "ebpd/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ebpd::text {

std::string to_string(const ParseDiagnostic& d) {
  std::ostringstream os;
  os << d.span.file << ':' << d.span.line << ':' << d.span.column << ": "
     << (d.severity == Severity::Error ? "error: " : "warning: ") << d.message;
  return os.str();
}

ParseError::ParseError(ParseDiagnostic d) : std::runtime_error(to_string(d)), diag_(std::move(d)) {}

namespace {

[[noreturn]] void fail(std::string message, SourceSpan span) {
  throw ParseError({Severity::Error, std::move(message), std::move(span)});
}

std::string lowered(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string_view filename)
      : text_(text), file_(filename) {}

  struct Token {
    enum class Kind { LParen, RParen, Symbol, End };
    Kind kind;
    std::string value;
    SourceSpan span;
  };

  Token next() {
    skip_blank();
    SourceSpan span{std::string(file_), line_, col_, 1};
    if (pos_ >= text_.size()) return {Token::Kind::End, "", span};
    char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::Kind::LParen, "(", span};
    }
    if (c == ')') {
      advance();
      return {Token::Kind::RParen, ")", span};
    }
    std::string value;
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == ';')
        break;
      value += ch;
      advance();
    }
    span.length = static_cast<int>(value.size());
    return {Token::Kind::Symbol, value, span};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::string_view file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Reader {
 public:
  Reader(std::string_view text, std::string_view filename) : lexer_(text, filename) {
    tok_ = lexer_.next();
  }

  bool at_end() const { return tok_.kind == Lexer::Token::Kind::End; }
  SourceSpan span() const { return tok_.span; }

  SExpr read() {
    if (tok_.kind == Lexer::Token::Kind::End) fail("unexpected end of input", tok_.span);
    if (tok_.kind == Lexer::Token::Kind::RParen) fail("unexpected ')'", tok_.span);
    if (tok_.kind == Lexer::Token::Kind::Symbol) {
      SExpr e{false, tok_.value, {}, tok_.span};
      tok_ = lexer_.next();
      return e;
    }
    SExpr list{true, "", {}, tok_.span};
    tok_ = lexer_.next();
    while (tok_.kind != Lexer::Token::Kind::RParen) {
      if (tok_.kind == Lexer::Token::Kind::End) fail("unclosed '('", list.span);
      list.items.push_back(read());
    }
    tok_ = lexer_.next();
    return list;
  }

 private:
  Lexer lexer_;
  Lexer::Token tok_;
};

const SExpr& expect_list(const SExpr& e, const char* what) {
  if (!e.is_list) fail(std::string("expected ") + what + ", found symbol '" + e.atom + "'", e.span);
  return e;
}

const std::string& expect_symbol(const SExpr& e, const char* what) {
  if (e.is_list) fail(std::string("expected ") + what, e.span);
  return e.atom;
}

bool head_is(const SExpr& e, std::string_view keyword) {
  return e.is_list && !e.items.empty() && !e.items.front().is_list &&
         lowered(e.items.front().atom) == keyword;
}

std::string keyword_of(const SExpr& e) {
  if (!e.is_list || e.items.empty() || e.items.front().is_list) return "";
  return lowered(e.items.front().atom);
}

model::Atom parse_atom(const SExpr& e) {
  const SExpr& list = expect_list(e, "an atom");
  if (list.items.empty()) fail("empty atom", list.span);
  model::Atom a;
  a.pred = expect_symbol(list.items.front(), "a predicate name");
  for (std::size_t i = 1; i < list.items.size(); ++i)
    a.args.push_back(expect_symbol(list.items[i], "a term"));
  return a;
}

model::Action parse_action(const SExpr& e) {
  model::Atom a = parse_atom(e);
  return {a.pred, a.args};
}

logic::KeyProperty parse_keyprop(const SExpr& e) {
  const SExpr& list = expect_list(e, "a key-property");
  if (list.items.size() != 2 || list.items.front().is_list)
    fail("expected (static|init|end (pred term...))", list.span);
  auto tag = logic::temporal_from_string(lowered(list.items.front().atom));
  if (!tag)
    fail("unknown temporal tag '" + list.items.front().atom + "' (expected static, init or end)",
         list.items.front().span);
  model::Atom a = parse_atom(list.items[1]);
  return {{*tag, a.pred, static_cast<int>(a.args.size())}, a.args};
}

struct DefineDoc {
  std::string kind;
  std::string name;
  std::vector<const SExpr*> sections;
  SourceSpan span;
};

DefineDoc open_define(const SExpr& root, std::string_view expected_kind) {
  const SExpr& doc = expect_list(root, "(define ...)");
  if (!head_is(doc, "define")) fail("expected (define ...)", doc.span);
  if (doc.items.size() < 2) fail("missing document head", doc.span);
  const SExpr& head = expect_list(doc.items[1], "(kind name)");
  if (head.items.size() != 2)
    fail(std::string("expected (") + std::string(expected_kind) + " name)", head.span);
  DefineDoc out;
  out.kind = lowered(expect_symbol(head.items[0], "a document kind"));
  if (out.kind != expected_kind)
    fail("expected document kind '" + std::string(expected_kind) + "', found '" + out.kind + "'",
         head.items[0].span);
  out.name = expect_symbol(head.items[1], "a name");
  out.span = doc.span;
  for (std::size_t i = 2; i < doc.items.size(); ++i) out.sections.push_back(&doc.items[i]);
  return out;
}

SExpr read_single(std::string_view textv, std::string_view filename) {
  Reader reader(textv, filename);
  SExpr root = reader.read();
  if (!reader.at_end()) fail("trailing content after document", reader.span());
  return root;
}

model::OperatorHead parse_op_head(const SExpr& e, bool require_vars) {
  const SExpr& list = expect_list(e, "an operator head");
  if (list.items.empty()) fail("empty operator head", list.span);
  model::OperatorHead head;
  head.name = expect_symbol(list.items.front(), "an operator name");
  for (std::size_t i = 1; i < list.items.size(); ++i) {
    const std::string& p = expect_symbol(list.items[i], "a parameter");
    if (require_vars && !model::is_variable(p))
      fail("operator parameter must be a variable: " + p, list.items[i].span);
    head.params.push_back(p);
  }
  return head;
}

void check_vars_declared(const std::vector<model::Atom>& atoms, const model::OperatorHead& head,
                         const SExpr& section) {
  std::set<model::Term> declared(head.params.begin(), head.params.end());
  for (const auto& a : atoms)
    for (const auto& t : a.args)
      if (model::is_variable(t) && !declared.contains(t))
        fail("variable " + t + " does not occur in the parameter list of " + head.name,
             section.span);
}

model::Operator parse_operator(const SExpr& e, bool is_abstract) {
  model::Operator op;
  op.kind = is_abstract ? model::OperatorKind::Abstract : model::OperatorKind::Concrete;
  const SExpr& list = expect_list(e, "an operator");
  if (list.items.size() < 2) fail("operator is missing its head", list.span);
  op.head = parse_op_head(list.items[1], true);

  for (std::size_t i = 2; i < list.items.size(); ++i) {
    const SExpr& section = list.items[i];
    const std::string kw = keyword_of(section);
    auto atoms_of = [&](std::vector<model::Atom>& out) {
      for (std::size_t j = 1; j < section.items.size(); ++j)
        out.push_back(parse_atom(section.items[j]));
    };
    if (kw == ":parent") {
      if (is_abstract) fail("abstract operators have no parent", section.span);
      if (section.items.size() != 2) fail("expected (:parent (head ...))", section.span);
      op.parent = parse_op_head(section.items[1], true);
    } else if (kw == ":static") {
      atoms_of(op.static_part);
    } else if (kw == ":precondition") {
      atoms_of(op.precondition);
    } else if (kw == ":effect") {
      for (std::size_t j = 1; j < section.items.size(); ++j) {
        const SExpr& lit = section.items[j];
        if (head_is(lit, "not")) {
          if (lit.items.size() != 2) fail("expected (not (atom ...))", lit.span);
          op.del_effects.push_back(parse_atom(lit.items[1]));
        } else {
          op.add_effects.push_back(parse_atom(lit));
        }
      }
    } else {
      fail("unknown operator section '" + kw + "'", section.span);
    }
  }

  check_vars_declared(op.static_part, op.head, list);
  check_vars_declared(op.precondition, op.head, list);
  check_vars_declared(op.add_effects, op.head, list);
  check_vars_declared(op.del_effects, op.head, list);

  if (op.parent) {
    // Parent parameters must be an order-preserving subsequence of the
    // operator's own parameters.
    std::size_t at = 0;
    for (const auto& p : op.parent->params) {
      while (at < op.head.params.size() && op.head.params[at] != p) ++at;
      if (at == op.head.params.size())
        fail("parent parameters of " + op.head.name +
                 " are not a subsequence of its parameter list",
             list.span);
      ++at;
    }
  }
  return op;
}

}  // namespace

model::Domain parse_domain(std::string_view textv, std::string_view filename) {
  SExpr root = read_single(textv, filename);
  DefineDoc doc = open_define(root, "domain");

  model::Domain d;
  d.name = doc.name;
  for (const SExpr* section : doc.sections) {
    const std::string kw = keyword_of(*section);
    if (kw == ":abstract-operator") {
      d.abstract_ops.push_back(parse_operator(*section, true));
    } else if (kw == ":operator") {
      d.concrete_ops.push_back(parse_operator(*section, false));
    } else {
      fail("unknown domain section '" + kw + "'", section->span);
    }
  }

  for (const auto& op : d.concrete_ops) {
    if (!op.parent) continue;
    if (d.find_abstract(op.parent->name, op.parent->params.size()) == nullptr)
      fail("parent (" + op.parent->name + "/" + std::to_string(op.parent->params.size()) +
               ") of operator " + op.head.name + " names no abstract operator",
           doc.span);
  }
  return d;
}

namespace {

void check_ground_term(const std::string& t, const SourceSpan& span, const char* where) {
  if (model::is_variable(t)) fail(std::string("non-ground term ") + t + " in " + where, span);
}

void check_declared(const std::string& t, const std::set<model::Term>& objects,
                    const SourceSpan& span) {
  if (!objects.contains(t)) fail("constant " + t + " is not declared in :objects", span);
}

}  // namespace

model::Experience parse_experience(std::string_view textv, std::string_view filename) {
  SExpr root = read_single(textv, filename);
  DefineDoc doc = open_define(root, "experience");

  model::Experience e;
  e.name = doc.name;
  bool saw_task = false;
  std::vector<std::pair<const SExpr*, const char*>> ground_checks;

  for (const SExpr* section : doc.sections) {
    const std::string kw = keyword_of(*section);
    if (kw == ":domain") {
      if (section->items.size() != 2) fail("expected (:domain name)", section->span);
      e.domain_name = expect_symbol(section->items[1], "a domain name");
    } else if (kw == ":task") {
      if (section->items.size() != 2) fail("expected (:task (head arg...))", section->span);
      e.task = parse_action(section->items[1]);
      saw_task = true;
    } else if (kw == ":objects") {
      for (std::size_t i = 1; i < section->items.size(); ++i)
        e.objects.insert(expect_symbol(section->items[i], "an object"));
    } else if (kw == ":key-properties") {
      for (std::size_t i = 1; i < section->items.size(); ++i) {
        e.key_properties.push_back(parse_keyprop(section->items[i]));
        ground_checks.emplace_back(&section->items[i], "key-properties");
      }
    } else if (kw == ":plan") {
      for (std::size_t i = 1; i < section->items.size(); ++i) {
        e.plan.push_back(parse_action(section->items[i]));
        ground_checks.emplace_back(&section->items[i], "plan");
      }
    } else {
      fail("unknown experience section '" + kw + "'", section->span);
    }
  }
  if (!saw_task) fail("experience has no :task section", doc.span);

  for (const auto& t : e.task.args) {
    check_ground_term(t, doc.span, "task");
    check_declared(t, e.objects, doc.span);
  }
  std::size_t check_at = 0;
  for (const auto& kp : e.key_properties) {
    const SExpr* src = ground_checks[check_at++].first;
    for (const auto& t : kp.terms) {
      check_ground_term(t, src->span, "key-properties");
      check_declared(t, e.objects, src->span);
    }
  }
  for (const auto& a : e.plan) {
    const SExpr* src = ground_checks[check_at++].first;
    for (const auto& t : a.args) {
      check_ground_term(t, src->span, "plan");
      check_declared(t, e.objects, src->span);
    }
  }
  return e;
}

model::Problem parse_problem(std::string_view textv, std::string_view filename) {
  SExpr root = read_single(textv, filename);
  DefineDoc doc = open_define(root, "problem");

  model::Problem p;
  p.name = doc.name;
  bool saw_task = false;

  for (const SExpr* section : doc.sections) {
    const std::string kw = keyword_of(*section);
    auto ground_atoms = [&](std::vector<model::Atom>& out) {
      for (std::size_t i = 1; i < section->items.size(); ++i) {
        model::Atom a = parse_atom(section->items[i]);
        for (const auto& t : a.args) check_ground_term(t, section->items[i].span, "problem");
        out.push_back(std::move(a));
      }
    };
    if (kw == ":domain") {
      if (section->items.size() != 2) fail("expected (:domain name)", section->span);
      p.domain_name = expect_symbol(section->items[1], "a domain name");
    } else if (kw == ":task") {
      if (section->items.size() != 2) fail("expected (:task (head arg...))", section->span);
      p.task = parse_action(section->items[1]);
      saw_task = true;
    } else if (kw == ":objects") {
      for (std::size_t i = 1; i < section->items.size(); ++i)
        p.objects.insert(expect_symbol(section->items[i], "an object"));
    } else if (kw == ":static") {
      ground_atoms(p.static_info);
    } else if (kw == ":init") {
      std::vector<model::Atom> atoms;
      ground_atoms(atoms);
      p.init.atoms.insert(atoms.begin(), atoms.end());
    } else if (kw == ":goal") {
      ground_atoms(p.goal);
    } else {
      fail("unknown problem section '" + kw + "'", section->span);
    }
  }
  if (!saw_task) fail("problem has no :task section", doc.span);

  auto check_all = [&](const std::vector<model::Atom>& atoms) {
    for (const auto& a : atoms)
      for (const auto& t : a.args) check_declared(t, p.objects, doc.span);
  };
  for (const auto& t : p.task.args) {
    check_ground_term(t, doc.span, "task");
    check_declared(t, p.objects, doc.span);
  }
  check_all(p.static_info);
  check_all(p.goal);
  for (const auto& a : p.init.atoms)
    for (const auto& t : a.args) check_declared(t, p.objects, doc.span);
  return p;
}

namespace {

logic::ThreeValuedStructure parse_scope_form(const SExpr& section) {
  logic::ThreeValuedStructure s;
  std::set<logic::ObjectId> summaries;
  struct Fact {
    logic::KeyProperty kp;
    logic::TruthValue value;
  };
  std::vector<Fact> facts;

  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const SExpr& item = section.items[i];
    if (head_is(item, "summary")) {
      if (item.items.size() != 2) fail("expected (summary ?object)", item.span);
      summaries.insert(expect_symbol(item.items[1], "an object"));
    } else if (head_is(item, "maybe")) {
      if (item.items.size() != 2) fail("expected (maybe (tag (pred ...)))", item.span);
      facts.push_back({parse_keyprop(item.items[1]), logic::TruthValue::Half});
    } else {
      facts.push_back({parse_keyprop(item), logic::TruthValue::True});
    }
  }

  std::set<logic::ObjectId> ids = summaries;
  for (const auto& f : facts)
    for (const auto& t : f.kp.terms) ids.insert(t);

  for (const auto& id : ids) {
    logic::AbstractNode n;
    n.id = id;
    n.is_summary = summaries.contains(id);
    s.universe.push_back(std::move(n));
  }
  for (const auto& f : facts) {
    s.vocabulary.insert(f.kp.predicate);
    s.truths[f.kp.predicate][f.kp.terms] = f.value;
    if (f.kp.predicate.arity == 1 && f.value == logic::TruthValue::True) {
      for (auto& n : s.universe)
        if (n.id == f.kp.terms.front()) n.canonical_name.insert(f.kp.predicate);
    }
  }

  std::set<std::set<logic::PredicateSymbol>> seen;
  for (const auto& n : s.universe) {
    if (!seen.insert(n.canonical_name).second)
      fail("scope has two nodes with the same canonical name (around " + n.id + ")",
           section.span);
  }
  return s;
}

schema::AbstractAction parse_plan_action(const SExpr& item, const model::Action& task) {
  const SExpr& list = expect_list(item, "an abstract plan item");
  if (list.items.empty() || !list.items.front().is_list)
    fail("expected ((action ?arg...) (:features ...))", list.span);
  schema::AbstractAction out;
  out.head = parse_action(list.items.front());
  for (std::size_t i = 1; i < list.items.size(); ++i) {
    const SExpr& section = list.items[i];
    if (keyword_of(section) != ":features")
      fail("unknown plan item section '" + keyword_of(section) + "'", section.span);
    for (std::size_t j = 1; j < section.items.size(); ++j)
      out.features.insert(parse_keyprop(section.items[j]));
  }

  std::set<model::Term> allowed(out.head.args.begin(), out.head.args.end());
  allowed.insert(task.args.begin(), task.args.end());
  std::set<model::Term> args(out.head.args.begin(), out.head.args.end());
  for (const auto& f : out.features) {
    bool touches = false;
    for (const auto& t : f.terms) {
      if (args.contains(t)) touches = true;
      if (!allowed.contains(t))
        fail("feature term " + t + " is neither an action argument nor a task parameter",
             list.span);
    }
    if (!touches)
      fail("feature " + logic::to_string(f) + " mentions no argument of " + out.head.name,
           list.span);
  }
  return out;
}

schema::ActivitySchema parse_schema_doc(const SExpr& root) {
  DefineDoc doc = open_define(root, "activity-schema");

  schema::ActivitySchema s;
  s.name = doc.name;
  bool saw_task = false;
  const SExpr* plan_section = nullptr;

  for (const SExpr* section : doc.sections) {
    const std::string kw = keyword_of(*section);
    if (kw == ":domain") {
      if (section->items.size() != 2) fail("expected (:domain name)", section->span);
      s.domain_name = expect_symbol(section->items[1], "a domain name");
    } else if (kw == ":task") {
      if (section->items.size() != 2) fail("expected (:task (head ?arg...))", section->span);
      s.head = parse_action(section->items[1]);
      for (const auto& t : s.head.args)
        if (!model::is_variable(t)) fail("task parameter must be a variable: " + t, section->span);
      saw_task = true;
    } else if (kw == ":abstract-plan") {
      plan_section = section;
    } else if (kw == ":scope") {
      s.scope = parse_scope_form(*section);
    } else {
      fail("unknown activity-schema section '" + kw + "'", section->span);
    }
  }
  if (!saw_task) fail("activity schema has no :task section", doc.span);

  if (plan_section != nullptr) {
    for (std::size_t i = 1; i < plan_section->items.size(); ++i) {
      const SExpr& item = plan_section->items[i];
      if (keyword_of(item) == ":loop") {
        schema::PlanItem loop;
        loop.kind = schema::PlanItem::Kind::Loop;
        for (std::size_t j = 1; j < item.items.size(); ++j) {
          if (keyword_of(item.items[j]) == ":loop")
            fail("nested loops are not allowed", item.items[j].span);
          loop.actions.push_back(parse_plan_action(item.items[j], s.head));
        }
        if (loop.actions.empty()) fail("loop body must not be empty", item.span);
        s.plan.push_back(std::move(loop));
      } else {
        schema::PlanItem single;
        single.kind = schema::PlanItem::Kind::Action;
        single.actions.push_back(parse_plan_action(item, s.head));
        s.plan.push_back(std::move(single));
      }
    }
  }
  return s;
}

}  // namespace

schema::ActivitySchema parse_schema(std::string_view textv, std::string_view filename) {
  return parse_schema_doc(read_single(textv, filename));
}

std::vector<schema::ActivitySchema> parse_schema_library(std::string_view textv,
                                                         std::string_view filename) {
  Reader reader(textv, filename);
  std::vector<schema::ActivitySchema> out;
  while (!reader.at_end()) out.push_back(parse_schema_doc(reader.read()));
  return out;
}

logic::ThreeValuedStructure parse_scope(std::string_view textv, std::string_view filename) {
  SExpr root = read_single(textv, filename);
  if (keyword_of(root) != ":scope") fail("expected (:scope ...)", root.span);
  return parse_scope_form(root);
}

namespace {

std::string atom_text(const model::Atom& a) { return model::to_string(a); }

std::string keyprop_text(const logic::KeyProperty& kp) {
  std::string out = "(" + std::string(logic::to_string(kp.predicate.temporal)) + " (" +
                    kp.predicate.name;
  for (const auto& t : kp.terms) out += ' ' + t;
  return out + "))";
}

void emit_atoms(std::ostringstream& os, const char* keyword, const std::vector<model::Atom>& atoms,
                const std::string& pad) {
  if (atoms.empty()) return;
  os << pad << '(' << keyword;
  for (const auto& a : atoms) os << "\n" << pad << "  " << atom_text(a);
  os << ")\n";
}

}  // namespace

std::string serialize_domain(const model::Domain& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  auto emit_op = [&](const model::Operator& op, const char* keyword) {
    os << "\n  (" << keyword << " (" << op.head.name;
    for (const auto& p : op.head.params) os << ' ' << p;
    os << ")";
    if (op.parent) {
      os << "\n    (:parent (" << op.parent->name;
      for (const auto& p : op.parent->params) os << ' ' << p;
      os << "))";
    }
    auto section = [&](const char* kw, const std::vector<model::Atom>& atoms, bool negated) {
      if (atoms.empty()) return std::string();
      std::string line = "\n    (" + std::string(kw);
      for (const auto& a : atoms)
        line += negated ? " (not " + atom_text(a) + ")" : " " + atom_text(a);
      return line + ")";
    };
    os << section(":static", op.static_part, false);
    os << section(":precondition", op.precondition, false);
    if (!op.add_effects.empty() || !op.del_effects.empty()) {
      os << "\n    (:effect";
      for (const auto& a : op.del_effects) os << " (not " << atom_text(a) << ")";
      for (const auto& a : op.add_effects) os << ' ' << atom_text(a);
      os << ")";
    }
    os << ")\n";
  };
  for (const auto& op : d.abstract_ops) emit_op(op, ":abstract-operator");
  for (const auto& op : d.concrete_ops) emit_op(op, ":operator");
  os << ")\n";
  return os.str();
}

std::string serialize_experience(const model::Experience& e) {
  std::ostringstream os;
  os << "(define (experience " << e.name << ")\n";
  os << "  (:domain " << e.domain_name << ")\n";
  os << "  (:task " << model::to_string(e.task) << ")\n";
  os << "  (:objects";
  for (const auto& o : e.objects) os << ' ' << o;
  os << ")\n";
  os << "  (:key-properties";
  for (const auto& kp : e.key_properties) os << "\n    " << keyprop_text(kp);
  os << ")\n";
  os << "  (:plan";
  for (const auto& a : e.plan) os << "\n    " << model::to_string(a);
  os << "))\n";
  return os.str();
}

std::string serialize_problem(const model::Problem& p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n";
  os << "  (:domain " << p.domain_name << ")\n";
  os << "  (:task " << model::to_string(p.task) << ")\n";
  os << "  (:objects";
  for (const auto& o : p.objects) os << ' ' << o;
  os << ")\n";
  std::string pad = "  ";
  emit_atoms(os, ":static", p.static_info, pad);
  std::vector<model::Atom> init(p.init.atoms.begin(), p.init.atoms.end());
  emit_atoms(os, ":init", init, pad);
  emit_atoms(os, ":goal", p.goal, pad);
  os << ")\n";
  return os.str();
}

std::string serialize_schema(const schema::ActivitySchema& s) {
  std::ostringstream os;
  os << "(define (activity-schema " << s.name << ")\n";
  os << "  (:domain " << s.domain_name << ")\n";
  os << "  (:task " << model::to_string(s.head) << ")\n";
  os << "  (:abstract-plan";
  auto emit_action = [&](const schema::AbstractAction& a, const char* pad) {
    os << "\n" << pad << "(" << model::to_string(a.head);
    if (!a.features.empty()) {
      os << "\n" << pad << "  (:features";
      for (const auto& f : a.features) os << "\n" << pad << "    " << keyprop_text(f);
      os << ")";
    }
    os << ")";
  };
  for (const auto& item : s.plan) {
    if (item.kind == schema::PlanItem::Kind::Loop) {
      os << "\n    (:loop";
      for (const auto& a : item.actions) emit_action(a, "      ");
      os << ")";
    } else {
      emit_action(item.action(), "    ");
    }
  }
  os << ")\n";
  os << logic::serialize_scope(s.scope, 2) << ")\n";
  return os.str();
}

std::string serialize_schema_library(const std::vector<schema::ActivitySchema>& lib) {
  std::string out;
  for (std::size_t i = 0; i < lib.size(); ++i) {
    if (i) out += '\n';
    out += serialize_schema(lib[i]);
  }
  return out;
}

void validate_against_domain(const model::Experience& e, const model::Domain& d) {
  if (!e.domain_name.empty() && e.domain_name != d.name)
    throw ValidationError("experience " + e.name + " names domain " + e.domain_name + ", not " +
                          d.name);
  std::map<std::pair<std::string, int>, int> arities;
  for (const auto& kp : e.key_properties) {
    auto key = std::make_pair(kp.predicate.name, static_cast<int>(kp.predicate.temporal));
    auto [it, inserted] = arities.emplace(key, kp.predicate.arity);
    if (!inserted && it->second != kp.predicate.arity)
      throw ValidationError("key-property arity mismatch for " + kp.predicate.name);
  }
  for (const auto& a : e.plan) {
    if (d.find_concrete(a.name, a.args.size()) == nullptr)
      throw ValidationError("plan step " + model::to_string(a) +
                            " names no concrete operator in domain " + d.name);
  }
}

void validate_against_domain(const model::Problem& p, const model::Domain& d) {
  if (!p.domain_name.empty() && p.domain_name != d.name)
    throw ValidationError("problem " + p.name + " names domain " + p.domain_name + ", not " +
                          d.name);
}

void validate_against_domain(const schema::ActivitySchema& s, const model::Domain& d) {
  if (!s.domain_name.empty() && s.domain_name != d.name)
    throw ValidationError("schema " + s.name + " names domain " + s.domain_name + ", not " +
                          d.name);
  for (const auto& item : s.plan) {
    for (const auto& a : item.actions) {
      if (d.find_abstract(a.head.name, a.head.args.size()) == nullptr)
        throw ValidationError("abstract action " + model::to_string(a.head) +
                              " names no abstract operator in domain " + d.name);
    }
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace ebpd::text
