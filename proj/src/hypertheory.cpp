#include "hypermon/hypertheory.hpp"

#include <algorithm>
#include <cctype>

namespace hypermon::hyper {

class PredicateParser {
 public:
  PredicateParser(std::string_view text, StatePredicate& out) : text_(text), out_(out) {}

  void run() {
    out_.root_ = iff();
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

 private:
  using Kind = StatePredicate::Kind;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, SourceLoc{1, static_cast<int>(pos_) + 1});
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  int node(Kind kind, int lhs = -1, int rhs = -1) {
    out_.nodes_.push_back({kind, -1, 0, lhs, rhs});
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int iff() {
    int lhs = implies();
    while (accept("<->")) lhs = node(Kind::Iff, lhs, implies());
    return lhs;
  }

  int implies() {
    const int lhs = disj();
    if (accept("->")) return node(Kind::Implies, lhs, implies());
    return lhs;
  }

  int disj() {
    int lhs = conj();
    while (accept("||") || accept("|")) lhs = node(Kind::Or, lhs, conj());
    return lhs;
  }

  int conj() {
    int lhs = unary();
    while (accept("&&") || accept("&")) lhs = node(Kind::And, lhs, unary());
    return lhs;
  }

  int unary() {
    if (accept("!")) return node(Kind::Not, unary());
    if (accept("(")) {
      const int inner = iff();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) {
      if (pos_ >= text_.size()) fail("unexpected end of predicate");
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "true") return node(Kind::True);
    if (name == "false") return node(Kind::False);
    if (pos_ >= text_.size() || text_[pos_] != '@') fail("atom '" + name + "' needs a trace tag @1 or @2");
    ++pos_;
    if (pos_ >= text_.size() || (text_[pos_] != '1' && text_[pos_] != '2')) fail("trace tag must be @1 or @2");
    const int trace = text_[pos_++] - '0';
    const auto& atoms = out_.atoms_;
    const auto it = std::find(atoms.begin(), atoms.end(), name);
    if (it == atoms.end()) {
      pos_ = start;
      fail("unknown atom '" + name + "'");
    }
    const int n = node(Kind::Atom);
    out_.nodes_[n].atom = static_cast<int>(it - atoms.begin());
    out_.nodes_[n].trace = trace;
    return n;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  StatePredicate& out_;
};

StatePredicate StatePredicate::parse(std::string_view text, std::vector<std::string> atoms) {
  if (atoms.empty()) throw ConfigError("the set of atomic propositions must be nonempty");
  for (std::size_t k = 0; k < atoms.size(); ++k)
    if (std::find(atoms.begin(), atoms.begin() + k, atoms[k]) != atoms.begin() + k)
      throw ConfigError("duplicate atom '" + atoms[k] + "'");
  if (atoms.size() > 32) throw ConfigError("at most 32 atoms are supported");
  StatePredicate f;
  f.atoms_ = std::move(atoms);
  PredicateParser(text, f).run();
  return f;
}

bool StatePredicate::eval(Letter first, Letter second) const { return evalNode(root_, first, second); }

bool StatePredicate::evalNode(int n, Letter first, Letter second) const {
  const Node& node = nodes_[n];
  switch (node.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return (((node.trace == 1 ? first : second) >> node.atom) & 1U) != 0;
    case Kind::Not: return !evalNode(node.lhs, first, second);
    case Kind::And: return evalNode(node.lhs, first, second) && evalNode(node.rhs, first, second);
    case Kind::Or: return evalNode(node.lhs, first, second) || evalNode(node.rhs, first, second);
    case Kind::Implies: return !evalNode(node.lhs, first, second) || evalNode(node.rhs, first, second);
    case Kind::Iff: return evalNode(node.lhs, first, second) == evalNode(node.rhs, first, second);
  }
  return false;
}

std::string StatePredicate::str() const { return strNode(root_); }

std::string StatePredicate::strNode(int n) const {
  const Node& node = nodes_[n];
  const auto bin = [&](const char* op) { return "(" + strNode(node.lhs) + " " + op + " " + strNode(node.rhs) + ")"; };
  switch (node.kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: return atoms_[node.atom] + "@" + std::to_string(node.trace);
    case Kind::Not: return "!" + strNode(node.lhs);
    case Kind::And: return bin("&&");
    case Kind::Or: return bin("||");
    case Kind::Implies: return bin("->");
    case Kind::Iff: return bin("<->");
  }
  return "";
}

std::string formatLetter(Letter v, const std::vector<std::string>& atoms) {
  std::string out = "{";
  bool first = true;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (!((v >> k) & 1U)) continue;
    out += (first ? "" : ", ") + atoms[k];
    first = false;
  }
  return out + "}";
}

namespace {

Letter letterCount(const StatePredicate& f) {
  if (f.atoms().size() > kMaxAtoms)
    throw ConfigError("enumeration is limited to " + std::to_string(kMaxAtoms) + " atoms, got " +
                      std::to_string(f.atoms().size()));
  return Letter{1} << f.atoms().size();
}

std::optional<Letter> irreflexiveLetter(const StatePredicate& f) {
  const Letter n = letterCount(f);
  for (Letter v = 0; v < n; ++v)
    if (!f.eval(v, v)) return v;
  return std::nullopt;
}

std::optional<Letter> deadEndLetter(const StatePredicate& f) {
  const Letter n = letterCount(f);
  for (Letter v = 0; v < n; ++v) {
    bool any = false;
    for (Letter w = 0; w < n && !any; ++w) any = f.eval(v, w);
    if (!any) return v;
  }
  return std::nullopt;
}

}  // namespace

bool isReflexive(const StatePredicate& f) { return !irreflexiveLetter(f); }
bool isSerial(const StatePredicate& f) { return !deadEndLetter(f); }

MonitorabilityVerdict classify(const StatePredicate& f) {
  MonitorabilityVerdict out{};
  out.irreflexive = irreflexiveLetter(f);
  out.falsifying = deadEndLetter(f);
  out.reflexive = !out.irreflexive;
  out.serial = !out.falsifying;
  if (out.reflexive) {
    out.classification = Monitorability::Monitorable;
    out.evidence = Evidence::Reflexive;
  } else if (!out.serial) {
    out.classification = Monitorability::Monitorable;
    out.evidence = Evidence::NonSerial;
  } else {
    out.classification = Monitorability::NonMonitorable;
    out.evidence = Evidence::None;
  }
  return out;
}

std::string_view toString(Monitorability m) {
  return m == Monitorability::Monitorable ? "MONITORABLE" : "NON_MONITORABLE";
}

std::string_view toString(Evidence e) {
  switch (e) {
    case Evidence::Reflexive: return "REFLEXIVE";
    case Evidence::NonSerial: return "NON_SERIAL";
    case Evidence::None: return "NONE";
  }
  return "NONE";
}

std::vector<FiniteTrace> violatingExtension(const StatePredicate& f, std::vector<FiniteTrace> u) {
  const auto v = deadEndLetter(f);
  if (!v) throw ContractError("predicate " + f.str() + " is serial; no letter falsifies it against every letter");
  if (u.empty())
    u.push_back({*v});
  else
    u.front().push_back(*v);
  return u;
}

}  // namespace hypermon::hyper
