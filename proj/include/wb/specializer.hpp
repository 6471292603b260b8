#pragma once

#include <string>
#include <vector>

#include "wb/evaluator.hpp"

namespace wb {

/// S(p, x) = [X1 := x; X2 := pair X1 X0; X3 := p; X0 := eval X3 X2].
/// Total and purely syntactic: phi_{S(p, x)}(y) ~ phi_p(pair(x, y)).
Index smn(const Index& p, const Nat& x);

/// Optimizing specializer, co-extensional with `smn`.
///
/// One forward pass of constant propagation over the decoded program with
/// X0 known to be pair(x, <input>): folds copy/succ/pred/pair/first/second/smn
/// on known values, folds if-zero and while on known guards, and routes reads
/// of the still-unknown input to wherever it currently lives. Loops and
/// branches on unknown guards are kept verbatim after their registers are
/// materialised; nothing is unrolled. A final pass drops dead assignments of
/// total statements.
Index smn_opt(const Index& p, const Nat& x);

/// A program expecting input pair(k, y) whose first component gets frozen.
struct Template {
  Program program;
};

/// smn(encode(t.program), k).
Index subst_const(const Template& t, const Nat& k);

struct ProbeLine {
  enum Kind {
    kNotEquivalent,  // (a, b) themselves disagree; nothing to check
    kConsistent,     // f(a) and f(b) agree on the sample
    kViolation,      // equivalent inputs, inequivalent images
    kIndeterminate,  // f exhausted on a or b
  };
  Index a;
  Index b;
  Kind kind;
  std::optional<Index> fa;
  std::optional<Index> fb;
};

struct ProbeReport {
  std::vector<ProbeLine> lines;
  /// First violating pair, if any. No violation is not a proof of
  /// extensionality: the probe can only refute.
  const ProbeLine* witness() const;
  std::size_t count(ProbeLine::Kind k) const;
  std::string to_string() const;
};

/// Samples the extensionality of the code transformer `f`: for each (a, b)
/// that agree on `inputs`, checks that f(a) and f(b) agree as well.
ProbeReport extensionality_probe(const Index& f, const std::vector<std::pair<Index, Index>>& pairs,
                                 const std::vector<Nat>& inputs, Fuel fuel);

}  // namespace wb
