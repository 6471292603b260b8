#pragma once

#include <string>
#include <vector>

#include "wb/evaluator.hpp"
#include "wb/specializer.hpp"

namespace wb {

/// s = [X1 := first X0; X2 := second X0; X0 := smn X1 X2], so phi_s = S.
Index smn_as_index();

struct StepRow {
  Nat input;
  Outcome interpreted;  // U on pair(source, input)
  Outcome target;       // smn(U, source) on input
  Outcome target_opt;   // smn_opt(U, source) on input
};

struct LawCheck {
  Index source;
  std::optional<Index> compiled;  // empty if producing it exhausted
  EquivReport report;
  bool pass() const { return compiled.has_value() && report.pass(); }
};

struct ProjectionReport {
  Index source;
  std::optional<Index> target;    // phi_s(U, source)
  std::optional<Index> compiler;  // phi_s(s, U)
  std::optional<Index> cogen;     // phi_s(s, s)
  std::optional<Index> generated_compiler;  // phi_cogen(U)
  Index target_opt;               // smn_opt(U, source)

  LawCheck first;                  // target ~ source
  std::vector<LawCheck> second;    // phi_compiler(src') ~ src'
  std::vector<LawCheck> third;     // phi_{phi_cogen(U)}(src') ~ src'
  std::vector<StepRow> steps;

  bool indeterminate() const;
  bool pass() const;
  /// Sum of target steps over sum of interpreted steps, on inputs where
  /// both halted.
  double trivial_ratio() const;
  double optimized_ratio() const;
  std::string to_string() const;
};

/// The three projections for `source`; the second and third laws are
/// checked on every index in `sources`.
ProjectionReport project(const Index& source, const std::vector<Index>& sources, const std::vector<Nat>& inputs,
                         Fuel fuel);

}  // namespace wb
