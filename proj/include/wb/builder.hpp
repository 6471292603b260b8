#pragma once

#include <functional>
#include <memory>

#include "wb/objlang.hpp"

namespace wb {

/// Fluent construction of object programs, with derived macros that expand
/// to core statements. Scratch registers come from a counter shared by a
/// builder and all of its nested blocks, so macros never clobber registers
/// handed out earlier by `fresh()`.
class Builder {
 public:
  using BlockFn = std::function<void(Builder&)>;

  /// Registers below `first_free` are reserved for the caller (X0 always is).
  explicit Builder(std::uint64_t first_free = 1);

  Var fresh();

  Builder& set(Var dst, const Nat& value);
  Builder& copy(Var dst, Var src);
  Builder& succ(Var dst, Var src);
  Builder& pred(Var dst, Var src);
  Builder& mkpair(Var dst, Var a, Var b);
  Builder& first(Var dst, Var src);
  Builder& second(Var dst, Var src);
  Builder& while_nonzero(Var guard, const BlockFn& body);
  Builder& if_zero(Var guard, const BlockFn& then_block, const BlockFn& else_block = {});
  Builder& eval(Var dst, Var code, Var arg);
  Builder& smn(Var dst, Var code, Var arg);
  Builder& beval(Var dst, Var code, Var arg, Var budget);
  Builder& query(Var dst, Var arg);
  Builder& raw(Stmt s);

  // Macros.
  Builder& add(Var dst, Var a, Var b);
  Builder& monus(Var dst, Var a, Var b);
  Builder& mul(Var dst, Var a, Var b);
  /// dst := 1 if a == b else 0, by simultaneous countdown; O(min(a, b)).
  Builder& eq(Var dst, Var a, Var b);
  /// dst := 1 if a == b else 0, by walking both pair trees; cost grows with
  /// the size of the common prefix, not with the values, so it is usable on
  /// program codes.
  Builder& eq_struct(Var dst, Var a, Var b);
  /// dst := 1 if src == 0 else 0.
  Builder& is_zero(Var dst, Var src);
  /// dst := cons(head, tail).
  Builder& cons(Var dst, Var head, Var tail);
  /// head, tail := uncons(list); list must be nonzero.
  Builder& uncons(Var head, Var tail, Var list);
  /// a, b := unpair(src).
  Builder& destructure(Var a, Var b, Var src);
  /// Infinite loop.
  Builder& diverge();

  /// Throws LanguageError if a query statement was used.
  Program build() const;
  OracleProgram build_oracle() const;
  const Block& block() const { return block_; }

 private:
  struct Shared {
    std::uint64_t next_reg;
    bool used_query = false;
  };
  explicit Builder(std::shared_ptr<Shared> shared) : shared_(std::move(shared)) {}
  Builder& emit(Op op, Var dst, const Nat& a = Nat(), const Nat& b = Nat(), const Nat& c = Nat());
  Block nested(const BlockFn& fn);

  std::shared_ptr<Shared> shared_;
  Block block_;
};

}  // namespace wb
