#include "hypermon/parser.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace hypermon::lang {

namespace {

enum class Tok { Ident, Int, Punct, AnnotStart, AnnotEnd, Eof };

struct Token {
  Tok kind;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool inAnnot = false;
    while (true) {
      skipBlanks(inAnnot);
      if (inAnnot && (atEnd() || peek() == '\n')) {
        out.push_back({Tok::AnnotEnd, "", loc()});
        inAnnot = false;
        continue;
      }
      if (atEnd()) break;
      const SourceLoc start = loc();
      const char c = peek();
      if (c == '/' && peek(1) == '/') {
        if (peek(2) == '@' && !inAnnot) {
          advance(3);
          out.push_back({Tok::AnnotStart, "//@", start});
          inAnnot = true;
        } else {
          while (!atEnd() && peek() != '\n') advance();
        }
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        advance(2);
        while (!atEnd() && !(peek() == '*' && peek(1) == '/')) advance();
        if (atEnd()) throw ParseError("unterminated block comment", start);
        advance(2);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string text;
        while (!atEnd() && std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
        if (!atEnd() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
          throw ParseError("malformed number", start);
        out.push_back({Tok::Int, text, start});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '\\') {
        std::string text(1, advance());
        while (!atEnd() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
          text += advance();
        if (text == "\\") throw ParseError("stray '\\'", start);
        out.push_back({Tok::Ident, text, start});
        continue;
      }
      static const char* const kPuncts[] = {"<->", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=",
                                            "/=",  "%=", "++", "--", "{",  "}",  "(",  ")",  "[",  "]",
                                            ";",   ",",  "=",  "<",  ">",  "+",  "-",  "*",  "/",  "%",
                                            "!"};
      bool matched = false;
      for (const char* p : kPuncts) {
        const std::string_view sv(p);
        if (src_.substr(pos_, sv.size()) == sv) {
          advance(sv.size());
          out.push_back({Tok::Punct, std::string(sv), start});
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    if (inAnnot) out.push_back({Tok::AnnotEnd, "", loc()});
    out.push_back({Tok::Eof, "", loc()});
    return out;
  }

 private:
  bool atEnd() const { return pos_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) advance();
  }
  void skipBlanks(bool stopAtNewline) {
    while (!atEnd()) {
      const char c = peek();
      if (c == '\n' && stopAtNewline) return;
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
        advance();
      else
        return;
    }
  }
  SourceLoc loc() const { return {line_, col_}; }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

enum class Ty { Int, Bool };

const char* tyName(Ty t) { return t == Ty::Int ? "int" : "boolean"; }

struct Typed {
  ExprPtr expr;
  Ty type;
};

struct PendingAnnotation {
  std::string keyword;
  std::size_t first;  // token index after the keyword
  SourceLoc loc;
};

struct MethodSig {
  std::string name;
  std::size_t arity;
  SourceLoc loc;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Program run() {
    scanSignatures();
    expectIdent("class");
    prog_.className = expectName();
    expect("{");
    while (!check("}")) parseMethod();
    expect("}");
    if (peek().kind != Tok::Eof) fail("trailing input after class body");
    if (prog_.methods.empty()) fail("class declares no methods");
    checkAcyclic();
    return std::move(prog_);
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool check(std::string_view punct, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::Punct && t.text == punct;
  }
  bool checkIdent(std::string_view word, std::size_t ahead = 0) const {
    const auto& t = peek(ahead);
    return t.kind == Tok::Ident && t.text == word;
  }
  bool accept(std::string_view punct) {
    if (!check(punct)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().loc); }
  [[noreturn]] void failAt(const std::string& msg, SourceLoc loc) const { throw ParseError(msg, loc); }
  std::string describe(const Token& t) const {
    switch (t.kind) {
      case Tok::Eof: return "end of input";
      case Tok::AnnotStart: return "annotation";
      case Tok::AnnotEnd: return "end of annotation";
      default: return "'" + t.text + "'";
    }
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "' but found " + describe(peek()));
  }
  void expectIdent(std::string_view word) {
    if (!checkIdent(word)) fail("expected '" + std::string(word) + "' but found " + describe(peek()));
    ++pos_;
  }
  static bool isKeyword(const std::string& s) {
    static const std::set<std::string> kw = {"class", "int",    "if",   "else",  "while",
                                             "for",   "return", "true", "false", "boolean"};
    return kw.count(s) != 0;
  }
  std::string expectName() {
    const auto& t = peek();
    if (t.kind != Tok::Ident || isKeyword(t.text) || t.text[0] == '\\')
      fail("expected identifier but found " + describe(t));
    ++pos_;
    return t.text;
  }

  // ---- pass 1: method signatures, so calls can resolve forward ----
  void scanSignatures() {
    int depth = 0;
    for (std::size_t k = 0; k + 2 < toks_.size(); ++k) {
      const auto& t = toks_[k];
      if (t.kind == Tok::Punct && t.text == "{") ++depth;
      if (t.kind == Tok::Punct && t.text == "}") --depth;
      if (depth != 1 || t.kind != Tok::Ident || t.text != "int") continue;
      if (toks_[k + 1].kind != Tok::Ident || toks_[k + 2].kind != Tok::Punct || toks_[k + 2].text != "(")
        continue;
      std::size_t arity = 0;
      std::size_t j = k + 3;
      if (!(toks_[j].kind == Tok::Punct && toks_[j].text == ")")) {
        arity = 1;
        for (; j < toks_.size() && !(toks_[j].kind == Tok::Punct && toks_[j].text == ")"); ++j)
          if (toks_[j].kind == Tok::Punct && toks_[j].text == ",") ++arity;
      }
      const std::string& name = toks_[k + 1].text;
      for (const auto& s : sigs_)
        if (s.name == name) throw ParseError("duplicate method '" + name + "'", toks_[k + 1].loc);
      sigs_.push_back({name, arity, toks_[k + 1].loc});
    }
  }

  // ---- scopes ----
  int declare(const std::string& name, SourceLoc loc) {
    for (const auto& scope : scopes_)
      if (scope.count(name)) failAt("variable '" + name + "' is already declared", loc);
    const int slot = method_->frameSize++;
    method_->slotNames.push_back(name);
    scopes_.back()[name] = slot;
    return slot;
  }
  int lookup(const std::string& name, SourceLoc loc) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    failAt("undeclared variable '" + name + "'", loc);
  }

  // ---- annotations ----
  std::vector<PendingAnnotation> collectAnnotations() {
    std::vector<PendingAnnotation> out;
    while (peek().kind == Tok::AnnotStart) {
      const SourceLoc loc = peek().loc;
      ++pos_;
      if (peek().kind != Tok::Ident) fail("expected annotation keyword");
      std::string keyword = peek().text;
      ++pos_;
      out.push_back({keyword, pos_, loc});
      while (peek().kind != Tok::AnnotEnd) ++pos_;
      ++pos_;
    }
    return out;
  }

  /// Parses the body of a deferred annotation in the current scope.
  template <typename Fn>
  void withAnnotation(const PendingAnnotation& a, Fn&& fn) {
    const std::size_t saved = pos_;
    pos_ = a.first;
    fn();
    accept(";");
    if (peek().kind != Tok::AnnotEnd) fail("unexpected " + describe(peek()) + " in annotation");
    pos_ = saved;
  }

  ExprPtr annotationExpr(const PendingAnnotation& a, bool allowResult) {
    ExprPtr out;
    withAnnotation(a, [&] {
      allowResult_ = allowResult;
      out = requireType(parseExpr(), Ty::Bool, a.keyword + " clause");
      allowResult_ = false;
    });
    return out;
  }

  // ---- methods ----
  void parseMethod() {
    auto annotations = collectAnnotations();
    MethodDef m;
    m.loc = peek().loc;
    expectIdent("int");
    m.name = expectName();
    prog_.methods.push_back(std::move(m));
    method_ = &prog_.methods.back();
    methodIndex_ = static_cast<int>(prog_.methods.size()) - 1;
    loopCounter_ = 0;
    scopes_.assign(1, {});
    expect("(");
    if (!check(")")) {
      do {
        expectIdent("int");
        const SourceLoc loc = peek().loc;
        std::string name = expectName();
        const int slot = declare(name, loc);
        method_->params.push_back({name, slot, std::nullopt});
      } while (accept(","));
    }
    expect(")");
    for (const auto& a : annotations) {
      if (a.keyword == "requires") {
        method_->preconditions.push_back(annotationExpr(a, false));
      } else if (a.keyword == "ensures") {
        method_->postconditions.push_back(annotationExpr(a, true));
      } else if (a.keyword == "domain") {
        withAnnotation(a, [&] { parseDomain(); });
      } else {
        failAt("annotation '" + a.keyword + "' is not allowed on a method", a.loc);
      }
    }
    if (!check("{")) fail("expected method body");
    method_->body = parseStatement();
    if (!alwaysReturns(*method_->body)) failAt("method '" + method_->name + "' may finish without return", method_->loc);
    scopes_.clear();
  }

  void parseDomain() {
    const SourceLoc loc = peek().loc;
    const std::string name = expectName();
    auto param = std::find_if(method_->params.begin(), method_->params.end(),
                              [&](const Param& p) { return p.name == name; });
    if (param == method_->params.end()) failAt("domain for unknown parameter '" + name + "'", loc);
    if (param->range) failAt("duplicate domain for parameter '" + name + "'", loc);
    expectIdent("in");
    expect("[");
    Integer lo = parseSignedInt();
    expect(",");
    Integer hi = parseSignedInt();
    expect("]");
    if (lo > hi) failAt("empty domain for parameter '" + name + "'", loc);
    param->range = Interval::closed(lo, hi);
  }

  Integer parseSignedInt() {
    const bool negative = accept("-");
    if (peek().kind != Tok::Int) fail("expected integer literal");
    Integer v = *parseInteger(peek().text);
    ++pos_;
    return negative ? Integer(-v) : v;
  }

  // ---- statements ----
  StmtPtr parseStatement() {
    const SourceLoc loc = peek().loc;
    if (peek().kind == Tok::AnnotStart) {
      auto annotations = collectAnnotations();
      if (checkIdent("while")) return parseWhile(annotations);
      if (checkIdent("for")) return parseFor(annotations);
      failAt("loop annotations must precede a while or for loop", loc);
    }
    if (check("{")) {
      ++pos_;
      scopes_.emplace_back();
      BlockStmt block;
      while (!check("}")) {
        if (peek().kind == Tok::Eof) fail("unterminated block");
        block.stmts.push_back(parseStatement());
      }
      ++pos_;
      scopes_.pop_back();
      return makeStmt(std::move(block), loc);
    }
    if (checkIdent("int")) {
      auto s = parseDecl();
      expect(";");
      return s;
    }
    if (checkIdent("if")) {
      ++pos_;
      expect("(");
      ExprPtr cond = requireType(parseExpr(), Ty::Bool, "if condition");
      expect(")");
      IfStmt s{cond, parseScoped(), nullptr};
      if (checkIdent("else")) {
        ++pos_;
        s.otherwise = parseScoped();
      }
      return makeStmt(std::move(s), loc);
    }
    if (checkIdent("while")) return parseWhile({});
    if (checkIdent("for")) return parseFor({});
    if (checkIdent("return")) {
      ++pos_;
      ExprPtr value = requireType(parseExpr(), Ty::Int, "return value");
      expect(";");
      return makeStmt(ReturnStmt{value}, loc);
    }
    if (check(";")) fail("empty statement");
    auto s = parseSimple();
    expect(";");
    return s;
  }

  /// Statement in its own scope (branch or loop body without braces).
  StmtPtr parseScoped() {
    scopes_.emplace_back();
    auto s = parseStatement();
    scopes_.pop_back();
    if (std::holds_alternative<DeclStmt>(s->node)) failAt("declaration not allowed here", s->loc);
    return s;
  }

  StmtPtr parseDecl() {
    const SourceLoc loc = peek().loc;
    expectIdent("int");
    const SourceLoc nameLoc = peek().loc;
    std::string name = expectName();
    ExprPtr init;
    if (accept("=")) init = requireType(parseExpr(), Ty::Int, "initializer");
    const int slot = declare(name, nameLoc);
    return makeStmt(DeclStmt{name, slot, init}, loc);
  }

  /// Assignment, compound assignment, or increment/decrement (no trailing ';').
  StmtPtr parseSimple() {
    const SourceLoc loc = peek().loc;
    if (check("++") || check("--")) {
      const bool inc = check("++");
      ++pos_;
      const SourceLoc nameLoc = peek().loc;
      std::string name = expectName();
      return incrementStmt(name, inc, nameLoc, loc);
    }
    const SourceLoc nameLoc = peek().loc;
    std::string name = expectName();
    if (check("++") || check("--")) {
      const bool inc = check("++");
      ++pos_;
      return incrementStmt(name, inc, nameLoc, loc);
    }
    static const std::pair<const char*, BinOp> kCompound[] = {
        {"+=", BinOp::Add}, {"-=", BinOp::Sub}, {"*=", BinOp::Mul}, {"/=", BinOp::Div}, {"%=", BinOp::Mod}};
    const int slot = lookup(name, nameLoc);
    if (accept("=")) {
      ExprPtr value = requireType(parseExpr(), Ty::Int, "assigned value");
      return makeStmt(AssignStmt{name, slot, value}, loc);
    }
    for (const auto& [spell, op] : kCompound) {
      if (accept(spell)) {
        ExprPtr rhs = requireType(parseExpr(), Ty::Int, "assigned value");
        ExprPtr cur = makeExpr(VarRef{name, slot}, nameLoc);
        return makeStmt(AssignStmt{name, slot, makeExpr(Binary{op, cur, rhs}, loc)}, loc);
      }
    }
    fail("expected assignment to '" + name + "'");
  }

  StmtPtr incrementStmt(const std::string& name, bool inc, SourceLoc nameLoc, SourceLoc loc) {
    const int slot = lookup(name, nameLoc);
    ExprPtr cur = makeExpr(VarRef{name, slot}, nameLoc);
    ExprPtr one = makeExpr(IntLit{1}, loc);
    return makeStmt(AssignStmt{name, slot, makeExpr(Binary{inc ? BinOp::Add : BinOp::Sub, cur, one}, loc)}, loc);
  }

  LoopAnnotation loopAnnotation(const std::vector<PendingAnnotation>& annotations) {
    LoopAnnotation out;
    for (const auto& a : annotations) {
      if (a.keyword == "maintaining" || a.keyword == "loop_invariant") {
        ExprPtr inv = annotationExpr(a, false);
        out.invariant = out.invariant ? makeExpr(Binary{BinOp::And, out.invariant, inv}, a.loc) : inv;
      } else if (a.keyword == "decreasing" || a.keyword == "decreases") {
        if (out.variant) failAt("duplicate decreasing clause", a.loc);
        withAnnotation(a, [&] { out.variant = requireType(parseExpr(), Ty::Int, "decreasing clause"); });
      } else {
        failAt("annotation '" + a.keyword + "' is not allowed on a loop", a.loc);
      }
    }
    return out;
  }

  StmtPtr parseWhile(const std::vector<PendingAnnotation>& annotations) {
    const SourceLoc loc = peek().loc;
    expectIdent("while");
    LoopAnnotation ann = loopAnnotation(annotations);
    expect("(");
    ExprPtr cond = requireType(parseExpr(), Ty::Bool, "loop condition");
    expect(")");
    StmtPtr body = parseScoped();
    return finishLoop(cond, body, nullptr, ann, loc);
  }

  StmtPtr parseFor(const std::vector<PendingAnnotation>& annotations) {
    const SourceLoc loc = peek().loc;
    expectIdent("for");
    expect("(");
    scopes_.emplace_back();
    BlockStmt outer;
    if (!check(";")) outer.stmts.push_back(checkIdent("int") ? parseDecl() : parseSimple());
    expect(";");
    LoopAnnotation ann = loopAnnotation(annotations);
    ExprPtr cond = check(";") ? makeExpr(BoolLit{true}, peek().loc)
                              : requireType(parseExpr(), Ty::Bool, "loop condition");
    expect(";");
    StmtPtr update;
    if (!check(")")) update = parseSimple();
    expect(")");
    StmtPtr body = parseScoped();
    scopes_.pop_back();
    outer.stmts.push_back(finishLoop(cond, body, update, ann, loc));
    return makeStmt(std::move(outer), loc);
  }

  StmtPtr finishLoop(ExprPtr cond, StmtPtr body, StmtPtr update, LoopAnnotation ann, SourceLoc loc) {
    std::set<int> assigned, declared;
    collectSlots(*body, assigned, declared);
    if (update) collectSlots(*update, assigned, declared);
    WhileStmt w{cond, body, update, ann, {}, ++loopCounter_};
    for (int s : assigned)
      if (!declared.count(s)) w.assignedSlots.push_back(s);
    return makeStmt(std::move(w), loc);
  }

  static void collectSlots(const Stmt& s, std::set<int>& assigned, std::set<int>& declared) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, DeclStmt>) {
            declared.insert(n.slot);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            assigned.insert(n.slot);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            collectSlots(*n.then, assigned, declared);
            if (n.otherwise) collectSlots(*n.otherwise, assigned, declared);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            collectSlots(*n.body, assigned, declared);
            if (n.update) collectSlots(*n.update, assigned, declared);
          } else if constexpr (std::is_same_v<T, BlockStmt>) {
            for (const auto& c : n.stmts) collectSlots(*c, assigned, declared);
          }
        },
        s.node);
  }

  static bool alwaysReturns(const Stmt& s) {
    if (std::holds_alternative<ReturnStmt>(s.node)) return true;
    if (const auto* b = std::get_if<BlockStmt>(&s.node))
      return std::any_of(b->stmts.begin(), b->stmts.end(), [](const StmtPtr& c) { return alwaysReturns(*c); });
    if (const auto* i = std::get_if<IfStmt>(&s.node))
      return i->otherwise && alwaysReturns(*i->then) && alwaysReturns(*i->otherwise);
    return false;
  }

  // ---- expressions ----
  ExprPtr requireType(Typed t, Ty want, const std::string& what) {
    if (t.type != want)
      failAt(what + " must be " + tyName(want) + " but is " + tyName(t.type), t.expr->loc);
    return t.expr;
  }

  Typed binary(BinOp op, Typed lhs, Typed rhs, SourceLoc loc) {
    Ty result = Ty::Int;
    switch (op) {
      case BinOp::Add: case BinOp::Sub: case BinOp::Mul: case BinOp::Div: case BinOp::Mod:
        requireType(lhs, Ty::Int, std::string("operand of '") + spelling(op) + "'");
        requireType(rhs, Ty::Int, std::string("operand of '") + spelling(op) + "'");
        break;
      case BinOp::Lt: case BinOp::Le: case BinOp::Gt: case BinOp::Ge:
        requireType(lhs, Ty::Int, std::string("operand of '") + spelling(op) + "'");
        requireType(rhs, Ty::Int, std::string("operand of '") + spelling(op) + "'");
        result = Ty::Bool;
        break;
      case BinOp::Eq: case BinOp::Ne:
        if (lhs.type != rhs.type) failAt("operands of '" + std::string(spelling(op)) + "' differ in type", loc);
        result = Ty::Bool;
        break;
      case BinOp::And: case BinOp::Or:
        requireType(lhs, Ty::Bool, std::string("operand of '") + spelling(op) + "'");
        requireType(rhs, Ty::Bool, std::string("operand of '") + spelling(op) + "'");
        result = Ty::Bool;
        break;
    }
    return {makeExpr(Binary{op, lhs.expr, rhs.expr}, loc), result};
  }

  Typed parseExpr() { return parseOr(); }

  Typed parseOr() {
    Typed lhs = parseAnd();
    while (check("||")) {
      const SourceLoc loc = peek().loc;
      ++pos_;
      lhs = binary(BinOp::Or, lhs, parseAnd(), loc);
    }
    return lhs;
  }
  Typed parseAnd() {
    Typed lhs = parseEquality();
    while (check("&&")) {
      const SourceLoc loc = peek().loc;
      ++pos_;
      lhs = binary(BinOp::And, lhs, parseEquality(), loc);
    }
    return lhs;
  }
  Typed parseEquality() {
    Typed lhs = parseRelational();
    while (check("==") || check("!=")) {
      const SourceLoc loc = peek().loc;
      const BinOp op = check("==") ? BinOp::Eq : BinOp::Ne;
      ++pos_;
      lhs = binary(op, lhs, parseRelational(), loc);
    }
    return lhs;
  }
  Typed parseRelational() {
    Typed lhs = parseAdditive();
    while (check("<") || check("<=") || check(">") || check(">=")) {
      const SourceLoc loc = peek().loc;
      const std::string& t = peek().text;
      const BinOp op = t == "<" ? BinOp::Lt : t == "<=" ? BinOp::Le : t == ">" ? BinOp::Gt : BinOp::Ge;
      ++pos_;
      lhs = binary(op, lhs, parseAdditive(), loc);
    }
    return lhs;
  }
  Typed parseAdditive() {
    Typed lhs = parseMultiplicative();
    while (check("+") || check("-")) {
      const SourceLoc loc = peek().loc;
      const BinOp op = check("+") ? BinOp::Add : BinOp::Sub;
      ++pos_;
      lhs = binary(op, lhs, parseMultiplicative(), loc);
    }
    return lhs;
  }
  Typed parseMultiplicative() {
    Typed lhs = parseUnary();
    while (check("*") || check("/") || check("%")) {
      const SourceLoc loc = peek().loc;
      const BinOp op = check("*") ? BinOp::Mul : check("/") ? BinOp::Div : BinOp::Mod;
      ++pos_;
      lhs = binary(op, lhs, parseUnary(), loc);
    }
    return lhs;
  }
  Typed parseUnary() {
    const SourceLoc loc = peek().loc;
    if (accept("!")) {
      Typed operand = parseUnary();
      return {makeExpr(Unary{UnOp::Not, requireType(operand, Ty::Bool, "operand of '!'")}, loc), Ty::Bool};
    }
    if (accept("-")) {
      Typed operand = parseUnary();
      return {makeExpr(Unary{UnOp::Neg, requireType(operand, Ty::Int, "operand of '-'")}, loc), Ty::Int};
    }
    return parsePrimary();
  }
  Typed parsePrimary() {
    const Token t = peek();
    if (t.kind == Tok::Int) {
      ++pos_;
      return {makeExpr(IntLit{*parseInteger(t.text)}, t.loc), Ty::Int};
    }
    if (accept("(")) {
      Typed inner = parseExpr();
      expect(")");
      return inner;
    }
    if (t.kind != Tok::Ident) fail("expected expression but found " + describe(t));
    if (t.text == "true" || t.text == "false") {
      ++pos_;
      return {makeExpr(BoolLit{t.text == "true"}, t.loc), Ty::Bool};
    }
    if (t.text == "\\result") {
      if (!allowResult_) failAt("'\\result' is only allowed in ensures clauses", t.loc);
      ++pos_;
      return {makeExpr(ResultRef{}, t.loc), Ty::Int};
    }
    const std::string name = expectName();
    if (accept("(")) {
      Call call{name, {}, -1};
      if (!check(")")) {
        do {
          call.args.push_back(requireType(parseExpr(), Ty::Int, "call argument"));
        } while (accept(","));
      }
      expect(")");
      auto sig = std::find_if(sigs_.begin(), sigs_.end(), [&](const MethodSig& s) { return s.name == name; });
      if (sig == sigs_.end()) failAt("call to undefined method '" + name + "'", t.loc);
      if (sig->arity != call.args.size())
        failAt("method '" + name + "' expects " + std::to_string(sig->arity) + " arguments, got " +
                   std::to_string(call.args.size()),
               t.loc);
      call.target = static_cast<int>(sig - sigs_.begin());
      callEdges_.push_back({methodIndex_, call.target, t.loc});
      return {makeExpr(std::move(call), t.loc), Ty::Int};
    }
    const int slot = lookup(name, t.loc);
    return {makeExpr(VarRef{name, slot}, t.loc), Ty::Int};
  }

  // ---- call graph ----
  struct CallEdge {
    int caller;
    int callee;
    SourceLoc loc;
  };

  void checkAcyclic() const {
    const int n = static_cast<int>(prog_.methods.size());
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::function<void(int)> visit = [&](int m) {
      state[m] = 1;
      for (const auto& e : callEdges_) {
        if (e.caller != m) continue;
        if (state[e.callee] == 1)
          failAt("recursive call to '" + prog_.methods[e.callee].name + "' (recursion is not supported)", e.loc);
        if (state[e.callee] == 0) visit(e.callee);
      }
      state[m] = 2;
    };
    for (int m = 0; m < n; ++m)
      if (state[m] == 0) visit(m);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Program prog_;
  std::vector<MethodSig> sigs_;
  std::vector<CallEdge> callEdges_;
  MethodDef* method_ = nullptr;
  int methodIndex_ = -1;
  int loopCounter_ = 0;
  bool allowResult_ = false;
  std::vector<std::map<std::string, int>> scopes_;
};

}  // namespace

Program parseProgram(std::string_view source) {
  Lexer lexer(source);
  Parser parser(lexer.run());
  return parser.run();
}

Program loadProgram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read program file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseProgram(buf.str());
}

}  // namespace hypermon::lang
