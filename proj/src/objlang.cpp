#include "wb/objlang.hpp"

#include <algorithm>

namespace wb {

Nat cons_nat(const Nat& head, const Nat& tail) { return Nat::pair(head, tail).succ(); }

std::pair<Nat, Nat> uncons_nat(const Nat& list) { return list.pred().unpair(); }

Nat encode_list(const std::vector<Nat>& items) {
  Nat code;
  for (auto it = items.rbegin(); it != items.rend(); ++it) code = cons_nat(*it, code);
  return code;
}

std::vector<Nat> decode_list(const Nat& code) {
  std::vector<Nat> out;
  Nat rest = code;
  while (!rest.is_zero()) {
    auto [h, t] = uncons_nat(rest);
    out.push_back(h);
    rest = t;
  }
  return out;
}

Nat encode_stmt(const Stmt& s) {
  auto tagged = [](Op op, const Nat& payload) {
    return Nat::pair(Nat(static_cast<std::uint64_t>(op)), payload);
  };
  switch (s.op) {
    case Op::kConst:
      return tagged(s.op, Nat::pair(s.dst, s.value));
    case Op::kCopy:
    case Op::kSucc:
    case Op::kPred:
    case Op::kFirst:
    case Op::kSecond:
    case Op::kQuery:
      return tagged(s.op, Nat::pair(s.dst, s.a));
    case Op::kPair:
    case Op::kEval:
    case Op::kSmn:
      return tagged(s.op, Nat::pair(s.dst, Nat::pair(s.a, s.b)));
    case Op::kBEval:
      return tagged(s.op, Nat::pair(s.dst, Nat::pair(s.a, Nat::pair(s.b, s.c))));
    case Op::kWhile:
      return tagged(s.op, Nat::pair(s.dst, encode_block(s.body)));
    case Op::kIfZero:
      return tagged(s.op, Nat::pair(s.dst, Nat::pair(encode_block(s.body), encode_block(s.alt))));
    case Op::kNop:
      return s.value;
  }
  return s.value;
}

Nat encode_block(const Block& b) {
  Nat code;
  for (auto it = b.rbegin(); it != b.rend(); ++it) code = cons_nat(encode_stmt(*it), code);
  return code;
}

Index encode(const Program& p) { return encode_block(p.body); }
Index encode(const OracleProgram& p) { return encode_block(p.body); }

Stmt decode_stmt(const Nat& code) {
  auto [tag, payload] = code.unpair();
  Stmt s;
  if (!tag.is_small() || tag.small() > 12) {
    s.op = Op::kNop;
    s.value = code;
    return s;
  }
  s.op = static_cast<Op>(tag.small());
  auto [dst, rest] = payload.unpair();
  s.dst = dst;
  switch (s.op) {
    case Op::kConst:
      s.value = rest;
      break;
    case Op::kCopy:
    case Op::kSucc:
    case Op::kPred:
    case Op::kFirst:
    case Op::kSecond:
    case Op::kQuery:
      s.a = rest;
      break;
    case Op::kPair:
    case Op::kEval:
    case Op::kSmn:
      std::tie(s.a, s.b) = rest.unpair();
      break;
    case Op::kBEval: {
      auto [code_reg, tail] = rest.unpair();
      s.a = code_reg;
      std::tie(s.b, s.c) = tail.unpair();
      break;
    }
    case Op::kWhile:
      s.body = decode_block(rest);
      break;
    case Op::kIfZero: {
      auto [then_code, else_code] = rest.unpair();
      s.body = decode_block(then_code);
      s.alt = decode_block(else_code);
      break;
    }
    case Op::kNop:
      break;
  }
  return s;
}

Block decode_block(const Nat& code) {
  Block out;
  Nat rest = code;
  while (!rest.is_zero()) {
    auto [h, t] = uncons_nat(rest);
    out.push_back(decode_stmt(h));
    rest = t;
  }
  return out;
}

Program decode(const Index& i) { return Program{decode_block(i)}; }
OracleProgram decode_oracle(const Index& i) { return OracleProgram{decode_block(i)}; }

bool contains_query(const Block& b) {
  return std::any_of(b.begin(), b.end(), [](const Stmt& s) {
    return s.op == Op::kQuery || contains_query(s.body) || contains_query(s.alt);
  });
}

namespace {

void max_register_into(const Block& b, Nat& best) {
  auto consider = [&best](const Nat& r) {
    if (Nat::compare(best, r) < 0) best = r;
  };
  for (const Stmt& s : b) {
    switch (s.op) {
      case Op::kNop:
        break;
      case Op::kConst:
      case Op::kWhile:
      case Op::kIfZero:
        consider(s.dst);
        break;
      case Op::kBEval:
        consider(s.dst), consider(s.a), consider(s.b), consider(s.c);
        break;
      case Op::kPair:
      case Op::kEval:
      case Op::kSmn:
        consider(s.dst), consider(s.a), consider(s.b);
        break;
      default:
        consider(s.dst), consider(s.a);
        break;
    }
    max_register_into(s.body, best);
    max_register_into(s.alt, best);
  }
}

}  // namespace

Nat max_register(const Block& b) {
  Nat best;
  max_register_into(b, best);
  return best;
}

Index compose_codes(const Index& i, const Index& j) {
  auto stmt = [](Op op, std::uint64_t dst, const Nat& a = Nat(), const Nat& b = Nat()) {
    Stmt s;
    s.op = op;
    s.dst = Nat(dst);
    s.a = a;
    s.b = b;
    return s;
  };
  Stmt load_j = stmt(Op::kConst, 2);
  load_j.value = j;
  Stmt load_i = stmt(Op::kConst, 3);
  load_i.value = i;
  Program p{{
      load_j,
      stmt(Op::kEval, 1, Nat(2), Nat(0)),
      load_i,
      stmt(Op::kEval, 0, Nat(3), Nat(1)),
  }};
  return encode(p);
}

FiniteFn::FiniteFn(std::initializer_list<std::pair<Nat, Nat>> entries) {
  for (const auto& [a, v] : entries) bind(a, v);
}

bool FiniteFn::bind(const Nat& arg, const Nat& value) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), arg,
                             [](const auto& e, const Nat& k) { return Nat::compare(e.first, k) < 0; });
  if (it != entries_.end() && it->first == arg) return false;
  entries_.insert(it, {arg, value});
  return true;
}

const Nat* FiniteFn::lookup(const Nat& arg) const {
  for (const auto& [a, v] : entries_)
    if (a == arg) return &v;
  return nullptr;
}

bool FiniteFn::contains(const FiniteFn& other) const {
  return std::all_of(other.entries_.begin(), other.entries_.end(), [this](const auto& e) {
    const Nat* v = lookup(e.first);
    return v != nullptr && *v == e.second;
  });
}

FiniteFn FiniteFn::restrict_below(const Nat& bound) const {
  FiniteFn out;
  for (const auto& [a, v] : entries_)
    if (Nat::compare(a, bound) < 0) out.entries_.push_back({a, v});
  return out;
}

}  // namespace wb
