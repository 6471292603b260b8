#include "wb/library.hpp"

#include <stdexcept>

#include "wb/builder.hpp"
#include "wb/evaluator.hpp"

namespace wb::lib {

Program identity() { return Program{}; }

Program successor() {
  Builder b;
  b.succ(X(0), X(0));
  return b.build();
}

Program add() {
  Builder b;
  Var x = b.fresh();
  Var y = b.fresh();
  b.destructure(x, y, X(0));
  b.add(X(0), x, y);
  return b.build();
}

Program mul() {
  Builder b;
  Var x = b.fresh();
  Var y = b.fresh();
  b.destructure(x, y, X(0));
  b.mul(X(0), x, y);
  return b.build();
}

Program factorial() {
  Builder b;
  Var i = b.fresh();
  Var acc = b.fresh();
  b.copy(i, X(0));
  b.set(acc, Nat(1));
  b.while_nonzero(i, [&](Builder& body) {
    body.mul(acc, acc, i);
    body.pred(i, i);
  });
  b.copy(X(0), acc);
  return b.build();
}

Program diverge() {
  Builder b;
  b.succ(X(1), X(1));
  b.while_nonzero(X(1), {});
  return b.build();
}

Program constant_zero() {
  Builder b;
  b.set(X(0), Nat());
  return b.build();
}

Program parity_transformer() {
  Builder b;
  Var n = b.fresh();
  Var odd = b.fresh();
  b.copy(n, X(0));
  b.while_nonzero(n, [&](Builder& body) {
    body.is_zero(odd, odd);
    body.pred(n, n);
  });
  b.if_zero(
      odd, [](Builder& even) { even.succ(X(0), X(0)); }, [](Builder& o) { o.pred(X(0), X(0)); });
  return b.build();
}

Program factorial_step_template() {
  Builder b;
  Var c = b.fresh();
  Var y = b.fresh();
  Var prev = b.fresh();
  Var v = b.fresh();
  b.destructure(c, y, X(0));
  b.if_zero(
      y, [](Builder& base) { base.set(X(0), Nat(1)); },
      [&](Builder& step) {
        step.pred(prev, y);
        step.eval(v, c, prev);
        step.mul(X(0), y, v);
      });
  return b.build();
}

namespace {

Program specializing_transformer(const Index& templ) {
  Builder b;
  Var t = b.fresh();
  b.set(t, templ);
  b.smn(X(0), t, X(0));
  return b.build();
}

}  // namespace

Program factorial_step_transformer() { return specializing_transformer(encode(factorial_step_template())); }

Program identity_transformer() { return Program{}; }

Program factorial_blueprint() {
  Builder b;
  Var self = b.fresh();
  Var y = b.fresh();
  Var prev = b.fresh();
  Var arg = b.fresh();
  Var u = b.fresh();
  Var v = b.fresh();
  b.destructure(self, y, X(0));
  b.if_zero(
      y, [](Builder& base) { base.set(X(0), Nat(1)); },
      [&](Builder& step) {
        step.pred(prev, y);
        step.mkpair(arg, self, prev);
        step.set(u, universal_index());
        step.eval(v, u, arg);
        step.mul(X(0), y, v);
      });
  return b.build();
}

OracleProgram factorial_oracle() {
  Builder b;
  Var y = b.fresh();
  Var prev = b.fresh();
  Var v = b.fresh();
  b.copy(y, X(0));
  b.if_zero(
      y, [](Builder& base) { base.set(X(0), Nat(1)); },
      [&](Builder& step) {
        step.pred(prev, y);
        step.query(v, prev);
        step.mul(X(0), y, v);
      });
  return b.build_oracle();
}

Program constant_transformer(const Index& code) {
  Builder b;
  b.set(X(0), code);
  return b.build();
}

const std::vector<NamedProgram>& corpus() {
  static const std::vector<NamedProgram> programs = {
      {"identity", identity()},
      {"succ", successor()},
      {"add", add()},
      {"mul", mul()},
      {"factorial", factorial()},
      {"div", diverge()},
      {"constant-zero", constant_zero()},
      {"parity-transformer", parity_transformer()},
      {"factorial-step-transformer", factorial_step_transformer()},
      {"identity-transformer", identity_transformer()},
  };
  return programs;
}

const Program& corpus_program(const std::string& name) {
  for (const auto& np : corpus())
    if (np.name == name) return np.program;
  throw std::out_of_range("no corpus program named '" + name + "'");
}

}  // namespace wb::lib
