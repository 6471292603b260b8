#include "wb/syntax.hpp"

#include <cctype>
#include <sstream>
#include <vector>

namespace wb {

namespace {

struct Token {
  enum Kind { kWord, kNumber, kAssign, kLBrace, kRBrace, kEqEq, kLAngle, kRAngle, kComma } kind;
  std::string text;
};

std::vector<Token> lex_line(std::string_view line, int lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char ch = line[i];
    if (ch == '#') break;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Token::kNumber, std::string(line.substr(i, j - i))});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < line.size() && std::isalnum(static_cast<unsigned char>(line[j]))) ++j;
      out.push_back({Token::kWord, std::string(line.substr(i, j - i))});
      i = j;
      continue;
    }
    if (line.substr(i, 2) == ":=") {
      out.push_back({Token::kAssign, ":="});
      i += 2;
      continue;
    }
    if (line.substr(i, 2) == "==") {
      out.push_back({Token::kEqEq, "=="});
      i += 2;
      continue;
    }
    switch (ch) {
      case '{': out.push_back({Token::kLBrace, "{"}); break;
      case '}': out.push_back({Token::kRBrace, "}"}); break;
      case '<': out.push_back({Token::kLAngle, "<"}); break;
      case '>': out.push_back({Token::kRAngle, ">"}); break;
      case ',': out.push_back({Token::kComma, ","}); break;
      default:
        throw ParseError(lineno, std::string("unexpected character '") + ch + "'");
    }
    ++i;
  }
  return out;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int lineno) : toks_(std::move(toks)), lineno_(lineno) {}

  bool done() const { return pos_ == toks_.size(); }
  const Token* peek() const { return done() ? nullptr : &toks_[pos_]; }

  bool accept(Token::Kind k, std::string_view text = {}) {
    if (done() || toks_[pos_].kind != k) return false;
    if (!text.empty() && toks_[pos_].text != text) return false;
    ++pos_;
    return true;
  }
  void expect(Token::Kind k, std::string_view what) {
    if (!accept(k)) fail(std::string("expected ") + std::string(what));
  }
  void expect_end() {
    if (!done()) fail("unexpected trailing '" + toks_[pos_].text + "'");
  }

  Nat reg() {
    if (done() || toks_[pos_].kind != Token::kWord) fail("expected a register");
    const std::string& w = toks_[pos_].text;
    if (w.size() < 2 || (w[0] != 'X' && w[0] != 'x') ||
        w.find_first_not_of("0123456789", 1) != std::string::npos)
      fail("expected a register, got '" + w + "'");
    ++pos_;
    return Nat::from_decimal(w.substr(1));
  }

  bool at_register() const {
    if (done() || toks_[pos_].kind != Token::kWord) return false;
    const std::string& w = toks_[pos_].text;
    return w.size() >= 2 && (w[0] == 'X' || w[0] == 'x') &&
           w.find_first_not_of("0123456789", 1) == std::string::npos;
  }

  Nat constant() {
    if (accept(Token::kLAngle)) {
      Nat a = constant();
      expect(Token::kComma, "','");
      Nat b = constant();
      expect(Token::kRAngle, "'>'");
      return Nat::pair(a, b);
    }
    if (done() || toks_[pos_].kind != Token::kNumber) fail("expected a constant");
    return Nat::from_decimal(toks_[pos_++].text);
  }

  std::string word() {
    if (done() || toks_[pos_].kind != Token::kWord) fail("expected a keyword");
    return toks_[pos_++].text;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(lineno_, msg); }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int lineno_;
};

Stmt simple(Op op, const Nat& dst, const Nat& a = Nat(), const Nat& b = Nat(), const Nat& c = Nat()) {
  Stmt s;
  s.op = op;
  s.dst = dst;
  s.a = a;
  s.b = b;
  s.c = c;
  return s;
}

struct OpenBlock {
  Stmt stmt;      // while / ifzero under construction
  bool in_else = false;
  int line = 0;
};

}  // namespace

Block parse_block(std::string_view text) {
  std::vector<OpenBlock> open;
  Block top;
  auto current = [&]() -> Block& {
    if (open.empty()) return top;
    OpenBlock& ob = open.back();
    return ob.in_else ? ob.stmt.alt : ob.stmt.body;
  };

  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;

    LineParser p(lex_line(line, lineno), lineno);
    if (p.done()) continue;

    if (p.accept(Token::kRBrace)) {
      if (open.empty()) p.fail("unmatched '}'");
      if (p.accept(Token::kWord, "else")) {
        if (open.back().stmt.op != Op::kIfZero || open.back().in_else) p.fail("'else' without 'if'");
        p.expect(Token::kLBrace, "'{'");
        p.expect_end();
        open.back().in_else = true;
        continue;
      }
      p.expect_end();
      Stmt done = std::move(open.back().stmt);
      open.pop_back();
      current().push_back(std::move(done));
      continue;
    }

    if (p.accept(Token::kWord, "while")) {
      Nat g = p.reg();
      p.expect(Token::kLBrace, "'{'");
      p.expect_end();
      open.push_back({simple(Op::kWhile, g), false, lineno});
      continue;
    }
    if (p.accept(Token::kWord, "if")) {
      Nat g = p.reg();
      p.expect(Token::kEqEq, "'=='");
      if (!p.accept(Token::kNumber, "0")) p.fail("only '== 0' tests are supported");
      p.expect(Token::kLBrace, "'{'");
      p.expect_end();
      open.push_back({simple(Op::kIfZero, g), false, lineno});
      continue;
    }
    if (p.accept(Token::kWord, "nop")) {
      Stmt s;
      s.op = Op::kNop;
      s.value = p.constant();
      p.expect_end();
      auto [tag, payload] = s.value.unpair();
      if (tag.is_small() && tag.small() <= 12) p.fail("nop code has a valid statement tag");
      current().push_back(std::move(s));
      continue;
    }

    Nat dst = p.reg();
    p.expect(Token::kAssign, "':='");
    Stmt s;
    if (p.at_register()) {
      s = simple(Op::kCopy, dst, p.reg());
    } else if (p.peek() != nullptr && p.peek()->kind != Token::kWord) {
      s = simple(Op::kConst, dst);
      s.value = p.constant();
    } else {
      std::string kw = p.word();
      if (kw == "succ") s = simple(Op::kSucc, dst, p.reg());
      else if (kw == "pred") s = simple(Op::kPred, dst, p.reg());
      else if (kw == "first") s = simple(Op::kFirst, dst, p.reg());
      else if (kw == "second") s = simple(Op::kSecond, dst, p.reg());
      else if (kw == "query") s = simple(Op::kQuery, dst, p.reg());
      else if (kw == "pair" || kw == "eval" || kw == "smn") {
        Op op = kw == "pair" ? Op::kPair : kw == "eval" ? Op::kEval : Op::kSmn;
        Nat a = p.reg();
        Nat b = p.reg();
        s = simple(op, dst, a, b);
      } else if (kw == "beval") {
        Nat a = p.reg();
        Nat b = p.reg();
        Nat c = p.reg();
        s = simple(Op::kBEval, dst, a, b, c);
      } else {
        p.fail("unknown operation '" + kw + "'");
      }
    }
    p.expect_end();
    current().push_back(std::move(s));
  }
  if (!open.empty()) throw ParseError(open.back().line, "unclosed block");
  return top;
}

Program parse_program(std::string_view text) {
  Block b = parse_block(text);
  if (contains_query(b)) throw LanguageError("query statement in a plain program");
  return Program{std::move(b)};
}

OracleProgram parse_oracle_program(std::string_view text) { return OracleProgram{parse_block(text)}; }

std::string print_constant(const Nat& n) {
  if (auto d = n.to_decimal(1 << 16)) return *d;
  auto [a, b] = n.unpair();
  return "<" + print_constant(a) + ", " + print_constant(b) + ">";
}

Nat parse_constant(std::string_view text) {
  std::vector<Token> toks;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    auto line = lex_line(text.substr(start, end - start), lineno);
    toks.insert(toks.end(), line.begin(), line.end());
    start = end + 1;
  }
  LineParser p(std::move(toks), 1);
  Nat n = p.constant();
  p.expect_end();
  return n;
}

namespace {

std::string reg(const Nat& r) {
  auto d = r.to_decimal(1 << 20);
  return "X" + (d ? *d : std::string("?"));
}

void print_into(std::ostringstream& os, const Block& b, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (const Stmt& s : b) {
    os << pad;
    switch (s.op) {
      case Op::kConst: os << reg(s.dst) << " := " << print_constant(s.value); break;
      case Op::kCopy: os << reg(s.dst) << " := " << reg(s.a); break;
      case Op::kSucc: os << reg(s.dst) << " := succ " << reg(s.a); break;
      case Op::kPred: os << reg(s.dst) << " := pred " << reg(s.a); break;
      case Op::kFirst: os << reg(s.dst) << " := first " << reg(s.a); break;
      case Op::kSecond: os << reg(s.dst) << " := second " << reg(s.a); break;
      case Op::kQuery: os << reg(s.dst) << " := query " << reg(s.a); break;
      case Op::kPair: os << reg(s.dst) << " := pair " << reg(s.a) << ' ' << reg(s.b); break;
      case Op::kEval: os << reg(s.dst) << " := eval " << reg(s.a) << ' ' << reg(s.b); break;
      case Op::kSmn: os << reg(s.dst) << " := smn " << reg(s.a) << ' ' << reg(s.b); break;
      case Op::kBEval:
        os << reg(s.dst) << " := beval " << reg(s.a) << ' ' << reg(s.b) << ' ' << reg(s.c);
        break;
      case Op::kNop: os << "nop " << print_constant(s.value); break;
      case Op::kWhile:
        os << "while " << reg(s.dst) << " {\n";
        print_into(os, s.body, indent + 1);
        os << pad << "}";
        break;
      case Op::kIfZero:
        os << "if " << reg(s.dst) << " == 0 {\n";
        print_into(os, s.body, indent + 1);
        os << pad << "} else {\n";
        print_into(os, s.alt, indent + 1);
        os << pad << "}";
        break;
    }
    os << '\n';
  }
}

}  // namespace

std::string print_block(const Block& b) {
  std::ostringstream os;
  print_into(os, b, 0);
  return os.str();
}

}  // namespace wb
