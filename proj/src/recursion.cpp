#include "wb/recursion.hpp"

#include <sstream>

#include "wb/builder.hpp"

namespace wb {

const Template& kleene_template() {
  static const Template t = [] {
    Builder b;
    Var pp = b.fresh();
    Var rest = b.fresh();
    Var y = b.fresh();
    Var x = b.fresh();
    Var self = b.fresh();
    Var arg = b.fresh();
    b.destructure(pp, rest, X(0));
    b.destructure(y, x, rest);
    b.smn(self, y, y);
    b.mkpair(arg, self, x);
    b.eval(X(0), pp, arg);
    return Template{b.build()};
  }();
  return t;
}

const Template& rogers_template() {
  static const Template t = [] {
    Builder b;
    Var ff = b.fresh();
    Var rest = b.fresh();
    Var x = b.fresh();
    Var y = b.fresh();
    Var code = b.fresh();
    b.destructure(ff, rest, X(0));
    b.destructure(x, y, rest);
    b.eval(code, ff, x);
    b.eval(X(0), code, y);
    return Template{b.build()};
  }();
  return t;
}

Index kleene_fix(const Index& blueprint) {
  Index q = subst_const(kleene_template(), blueprint);
  return smn(q, q);
}

Index kleene_h_index() {
  static const Index h = [] {
    Builder b;
    Var t = b.fresh();
    Var q = b.fresh();
    b.set(t, encode(kleene_template().program));
    b.smn(q, t, X(0));
    b.smn(X(0), q, q);
    return encode(b.build());
  }();
  return h;
}

Index rogers_n(const Index& z) { return kleene_fix(subst_const(rogers_template(), z)); }

Index rogers_n_index() {
  static const Index n = [] {
    Builder b;
    Var tr = b.fresh();
    Var blueprint = b.fresh();
    Var tk = b.fresh();
    Var q = b.fresh();
    b.set(tr, encode(rogers_template().program));
    b.smn(blueprint, tr, X(0));
    b.set(tk, encode(kleene_template().program));
    b.smn(q, tk, blueprint);
    b.smn(X(0), q, q);
    return encode(b.build());
  }();
  return n;
}

Index rogers_fix(const Index& f) { return rogers_n(f); }

RogersResult rogers_fix_checked(const Index& f, const std::vector<Nat>& inputs, Fuel fuel) {
  RogersResult r{rogers_fix(f), RogersResult::kIndeterminate, std::nullopt, std::nullopt};
  Outcome image = run(f, r.e, fuel);
  if (image.is_exhausted()) return r;
  r.image = image.value();
  r.equiv = check_equiv(r.e, image.value(), inputs, fuel);
  r.verdict = r.equiv->pass() ? RogersResult::kFixed : RogersResult::kNotFixed;
  return r;
}

std::string RogersResult::to_string() const {
  std::ostringstream os;
  os << "fixed point " << e.describe() << '\n';
  switch (verdict) {
    case kFixed: os << "FIXED f(e) = " << image->describe() << " agrees with e on the sample\n"; break;
    case kNotFixed: os << "NOT-FIXED f(e) = " << image->describe() << " disagrees with e\n"; break;
    case kIndeterminate: os << "INDETERMINATE f did not halt on e within the budget\n"; break;
  }
  if (equiv) os << equiv->to_string();
  return os.str();
}

}  // namespace wb
