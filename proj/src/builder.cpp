#include "wb/builder.hpp"

namespace wb {

Builder::Builder(std::uint64_t first_free)
    : shared_(std::make_shared<Shared>(Shared{first_free < 1 ? 1 : first_free})) {}

Var Builder::fresh() { return X(shared_->next_reg++); }

Builder& Builder::emit(Op op, Var dst, const Nat& a, const Nat& b, const Nat& c) {
  Stmt s;
  s.op = op;
  s.dst = dst.id;
  s.a = a;
  s.b = b;
  s.c = c;
  block_.push_back(std::move(s));
  return *this;
}

Block Builder::nested(const BlockFn& fn) {
  Builder child(shared_);
  if (fn) fn(child);
  return std::move(child.block_);
}

Builder& Builder::set(Var dst, const Nat& value) {
  Stmt s;
  s.op = Op::kConst;
  s.dst = dst.id;
  s.value = value;
  block_.push_back(std::move(s));
  return *this;
}

Builder& Builder::copy(Var dst, Var src) { return emit(Op::kCopy, dst, src.id); }
Builder& Builder::succ(Var dst, Var src) { return emit(Op::kSucc, dst, src.id); }
Builder& Builder::pred(Var dst, Var src) { return emit(Op::kPred, dst, src.id); }
Builder& Builder::mkpair(Var dst, Var a, Var b) { return emit(Op::kPair, dst, a.id, b.id); }
Builder& Builder::first(Var dst, Var src) { return emit(Op::kFirst, dst, src.id); }
Builder& Builder::second(Var dst, Var src) { return emit(Op::kSecond, dst, src.id); }
Builder& Builder::eval(Var dst, Var code, Var arg) { return emit(Op::kEval, dst, code.id, arg.id); }
Builder& Builder::smn(Var dst, Var code, Var arg) { return emit(Op::kSmn, dst, code.id, arg.id); }
Builder& Builder::beval(Var dst, Var code, Var arg, Var budget) {
  return emit(Op::kBEval, dst, code.id, arg.id, budget.id);
}
Builder& Builder::query(Var dst, Var arg) {
  shared_->used_query = true;
  return emit(Op::kQuery, dst, arg.id);
}

Builder& Builder::raw(Stmt s) {
  if (s.op == Op::kQuery || contains_query(s.body) || contains_query(s.alt)) shared_->used_query = true;
  block_.push_back(std::move(s));
  return *this;
}

Builder& Builder::while_nonzero(Var guard, const BlockFn& body) {
  Stmt s;
  s.op = Op::kWhile;
  s.dst = guard.id;
  s.body = nested(body);
  block_.push_back(std::move(s));
  return *this;
}

Builder& Builder::if_zero(Var guard, const BlockFn& then_block, const BlockFn& else_block) {
  Stmt s;
  s.op = Op::kIfZero;
  s.dst = guard.id;
  s.body = nested(then_block);
  s.alt = nested(else_block);
  block_.push_back(std::move(s));
  return *this;
}

Builder& Builder::add(Var dst, Var a, Var b) {
  Var count = fresh();
  copy(count, b);
  if (dst != a) copy(dst, a);
  return while_nonzero(count, [&](Builder& body) {
    body.succ(dst, dst);
    body.pred(count, count);
  });
}

Builder& Builder::monus(Var dst, Var a, Var b) {
  Var count = fresh();
  copy(count, b);
  if (dst != a) copy(dst, a);
  return while_nonzero(count, [&](Builder& body) {
    body.pred(dst, dst);
    body.pred(count, count);
  });
}

Builder& Builder::mul(Var dst, Var a, Var b) {
  Var count = fresh();
  Var step = fresh();
  Var acc = fresh();
  copy(count, a);
  copy(step, b);
  set(acc, Nat());
  while_nonzero(count, [&](Builder& body) {
    body.add(acc, acc, step);
    body.pred(count, count);
  });
  return copy(dst, acc);
}

Builder& Builder::eq(Var dst, Var a, Var b) {
  Var left = fresh();
  Var right = fresh();
  Var differ = fresh();
  copy(left, a);
  copy(right, b);
  set(differ, Nat());
  while_nonzero(left, [&](Builder& body) {
    body.if_zero(
        right,
        [&](Builder& then_b) {
          then_b.set(differ, Nat(1));
          then_b.set(left, Nat());
        },
        [&](Builder& else_b) {
          else_b.pred(left, left);
          else_b.pred(right, right);
        });
  });
  // left is 0 here; equal iff nothing differed and right is also 0.
  return if_zero(
      differ, [&](Builder& then_b) { then_b.is_zero(dst, right); },
      [&](Builder& else_b) { else_b.set(dst, Nat()); });
}

Builder& Builder::eq_struct(Var dst, Var a, Var b) {
  // Worklist of pending (x, y) comparisons. 0 and 1 are the fixed points of
  // `first`, so they are compared directly; every x >= 2 has strictly
  // smaller components.
  Var stack = fresh();
  Var item = fresh();
  Var x = fresh();
  Var y = fresh();
  Var xm = fresh();
  Var ym = fresh();
  Var result = fresh();
  Var l = fresh();
  Var r = fresh();
  auto fail = [&](Builder& blk) {
    blk.set(result, Nat());
    blk.set(stack, Nat());
  };
  mkpair(item, a, b);
  set(stack, Nat());
  cons(stack, item, stack);
  set(result, Nat(1));
  while_nonzero(stack, [&](Builder& loop) {
    loop.uncons(item, stack, stack);
    loop.destructure(x, y, item);
    loop.if_zero(
        x, [&](Builder& x0) { x0.if_zero(y, {}, fail); },
        [&](Builder& xpos) {
          xpos.if_zero(y, fail, [&](Builder& both) {
            both.pred(xm, x);
            both.pred(ym, y);
            both.if_zero(
                xm, [&](Builder& x1) { x1.if_zero(ym, {}, fail); },
                [&](Builder& big) {
                  big.if_zero(ym, fail, [&](Builder& split) {
                    split.second(l, x);
                    split.second(r, y);
                    split.mkpair(item, l, r);
                    split.cons(stack, item, stack);
                    split.first(l, x);
                    split.first(r, y);
                    split.mkpair(item, l, r);
                    split.cons(stack, item, stack);
                  });
                });
          });
        });
  });
  return copy(dst, result);
}

Builder& Builder::is_zero(Var dst, Var src) {
  return if_zero(
      src, [&](Builder& t) { t.set(dst, Nat(1)); }, [&](Builder& e) { e.set(dst, Nat()); });
}

Builder& Builder::cons(Var dst, Var head, Var tail) {
  mkpair(dst, head, tail);
  return succ(dst, dst);
}

Builder& Builder::uncons(Var head, Var tail, Var list) {
  Var cell = fresh();
  pred(cell, list);
  first(head, cell);
  return second(tail, cell);
}

Builder& Builder::destructure(Var a, Var b, Var src) {
  if (a == src) {
    second(b, src);
    return first(a, src);
  }
  first(a, src);
  return second(b, src);
}

Builder& Builder::diverge() {
  Var spin = fresh();
  set(spin, Nat(1));
  return while_nonzero(spin, {});
}

Program Builder::build() const {
  if (shared_->used_query || contains_query(block_))
    throw LanguageError("query statement in a plain program");
  return Program{block_};
}

OracleProgram Builder::build_oracle() const { return OracleProgram{block_}; }

}  // namespace wb
