#pragma once

#include <optional>
#include <string>

#include "wb/evaluator.hpp"
#include "wb/specializer.hpp"

namespace wb {

/// On pair(pp, pair(y, x)): eval(pp, pair(smn(y, y), x)).
const Template& kleene_template();
/// On pair(ff, pair(x, y)): eval(eval(ff, x), y).
const Template& rogers_template();

/// e = smn(q, q) with q = subst_const(kleene_template(), blueprint), so that
/// phi_e(y) ~ phi_blueprint(pair(e, y)).
Index kleene_fix(const Index& blueprint);

/// Host h(p) = kleene_fix(p).
inline Index kleene_h(const Index& p) { return kleene_fix(p); }
/// In-language H: [X1 := T_K; X2 := smn X1 X0; X0 := smn X2 X2].
Index kleene_h_index();

/// Host n(z) = kleene_fix(subst_const(rogers_template(), z)).
Index rogers_n(const Index& z);
/// In-language N with run(N, z) = n(z).
Index rogers_n_index();

struct RogersResult {
  enum Verdict {
    kFixed,          // f(e) halted and e, f(e) agree on the sample
    kNotFixed,       // f(e) halted and they disagree (should not happen)
    kIndeterminate,  // f did not halt on e within the budget
  };
  Index e;
  Verdict verdict;
  std::optional<Index> image;  // f(e) when it halted
  std::optional<EquivReport> equiv;
  std::string to_string() const;
};

/// e = kleene_fix(subst_const(rogers_template(), f)), so phi_e ~ phi_{f(e)}.
Index rogers_fix(const Index& f);

/// rogers_fix plus the "if f(e) halts" check at `fuel`, comparing e and f(e)
/// on `inputs`.
RogersResult rogers_fix_checked(const Index& f, const std::vector<Nat>& inputs, Fuel fuel);

}  // namespace wb
