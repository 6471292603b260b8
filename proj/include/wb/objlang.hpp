#pragma once

// The object language: a WHILE-style register machine over naturals with
// reflective primitives (eval, smn, beval), plus its Goedel numbering.
//
// Every natural decodes to a program. Statement codes are pair(tag, payload)
// using the tag table below; sequences are nil = 0, cons(h, t) = pair(h, t) + 1.
//
//   0 const   pair(dst, c)              7 while   pair(guard, body)
//   1 copy    pair(dst, src)            8 ifzero  pair(guard, pair(then, else))
//   2 succ    pair(dst, src)            9 eval    pair(dst, pair(code, arg))
//   3 pred    pair(dst, src)           10 smn     pair(dst, pair(code, arg))
//   4 pair    pair(dst, pair(a, b))    11 beval   pair(dst, pair(code, pair(arg, budget)))
//   5 first   pair(dst, src)           12 query   pair(dst, arg)
//   6 second  pair(dst, src)           >12 no-op (raw code kept)

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wb/nat.hpp"

namespace wb {

/// A program code. Every natural is a valid index.
using Index = Nat;

/// A register name. X0 carries the input and the output.
struct Var {
  Nat id;
  friend bool operator==(const Var&, const Var&) = default;
};

inline Var X(std::uint64_t i) { return Var{Nat(i)}; }

enum class Op : std::uint8_t {
  kConst = 0,
  kCopy = 1,
  kSucc = 2,
  kPred = 3,
  kPair = 4,
  kFirst = 5,
  kSecond = 6,
  kWhile = 7,
  kIfZero = 8,
  kEval = 9,
  kSmn = 10,
  kBEval = 11,
  kQuery = 12,
  kNop = 13,
};

struct Stmt;
using Block = std::vector<Stmt>;

/// One statement. Field use by op:
///   const: dst, value          copy/succ/pred/first/second: dst, a
///   pair: dst, a, b            while: dst (guard), body
///   ifzero: dst (guard), body (then), alt (else)
///   eval/smn: dst, a (code), b (arg)      beval: dst, a, b, c (budget)
///   query: dst, a (arg)        nop: value (the raw statement code)
struct Stmt {
  Op op = Op::kNop;
  Nat dst;
  Nat a;
  Nat b;
  Nat c;
  Nat value;
  Block body;
  Block alt;

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

/// A plain program: input in X0, every other register starts at 0, the
/// output is X0 at termination. k-ary inputs are right-nested pairs.
struct Program {
  Block body;
  friend bool operator==(const Program&, const Program&) = default;
};

/// A program whose body may use `query` to consult an oracle.
struct OracleProgram {
  Block body;
  friend bool operator==(const OracleProgram&, const OracleProgram&) = default;
};

class LanguageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pairing on naturals.
inline Nat pair_nat(const Nat& x, const Nat& y) { return Nat::pair(x, y); }
inline std::pair<Nat, Nat> unpair_nat(const Nat& n) { return n.unpair(); }

/// nil = 0, cons(h, t) = pair(h, t) + 1.
Nat cons_nat(const Nat& head, const Nat& tail);
/// Inverse of cons_nat on nonzero codes; callers check for nil first.
std::pair<Nat, Nat> uncons_nat(const Nat& list);
Nat encode_list(const std::vector<Nat>& items);
/// Total: decodes any natural as a list.
std::vector<Nat> decode_list(const Nat& code);

Nat encode_stmt(const Stmt& s);
Nat encode_block(const Block& b);
Index encode(const Program& p);
Index encode(const OracleProgram& p);

Stmt decode_stmt(const Nat& code);
Block decode_block(const Nat& code);
/// Total. Tags above 12 decode to no-ops that remember their raw code, so
/// encode(decode(n)) == n for every n. A decoded program may contain query
/// statements; run without an oracle they behave as queries to the
/// nowhere-defined function.
Program decode(const Index& i);
OracleProgram decode_oracle(const Index& i);

bool contains_query(const Block& b);

/// Largest register id mentioned anywhere in the block (0 if none).
Nat max_register(const Block& b);

/// k with phi_k(x) ~ phi_i(phi_j(x)).
Index compose_codes(const Index& i, const Index& j);

/// A finite partial function on naturals, kept sorted by argument.
class FiniteFn {
 public:
  FiniteFn() = default;
  FiniteFn(std::initializer_list<std::pair<Nat, Nat>> entries);

  /// Returns false (and leaves the map unchanged) if `arg` is already bound.
  bool bind(const Nat& arg, const Nat& value);
  const Nat* lookup(const Nat& arg) const;
  bool contains(const FiniteFn& other) const;  // other ⊆ *this
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::vector<std::pair<Nat, Nat>>& entries() const { return entries_; }
  /// Restriction to arguments strictly below `bound`.
  FiniteFn restrict_below(const Nat& bound) const;

  friend bool operator==(const FiniteFn&, const FiniteFn&) = default;

 private:
  std::vector<std::pair<Nat, Nat>> entries_;
};

}  // namespace wb
