#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wb/objlang.hpp"

namespace wb {

/// Number of statement executions a run may perform.
struct Fuel {
  std::uint64_t budget = 0;
};

/// Result of a budgeted run. `Exhausted` is the desk-scale stand-in for
/// divergence: it only says the run did not halt within the budget.
class Outcome {
 public:
  static Outcome halted(Nat value, std::uint64_t steps) { return Outcome(true, std::move(value), steps, 0); }
  static Outcome exhausted(std::uint64_t budget) { return Outcome(false, Nat(), 0, budget); }

  bool is_halted() const { return halted_; }
  bool is_exhausted() const { return !halted_; }
  const Nat& value() const { return value_; }
  std::uint64_t steps() const { return steps_; }
  std::uint64_t budget() const { return budget_; }

  /// "HALT <v> steps=<s>" or "EXHAUSTED fuel=<b>".
  std::string to_string() const;

  friend bool operator==(const Outcome&, const Outcome&) = default;

 private:
  Outcome(bool h, Nat v, std::uint64_t s, std::uint64_t b)
      : halted_(h), value_(std::move(v)), steps_(s), budget_(b) {}
  bool halted_;
  Nat value_;
  std::uint64_t steps_;
  std::uint64_t budget_;
};

/// What `query` statements in the top-level program consult.
struct NoOracle {};
using Oracle = std::variant<NoOracle, Index, FiniteFn>;

struct TraceEvent {
  std::size_t frame_depth;
  std::uint64_t step;  // steps used after charging this statement
  const Stmt* stmt;
};

struct RunOptions {
  Fuel fuel;
  /// Called once per executed statement, before its effect.
  std::function<void(const TraceEvent&)> trace;
};

/// Run program `p` on `input`.
///
/// Costs: each executed statement costs 1 (a `while` costs 1 per guard test).
/// `eval` costs 1 plus the inner run, sharing the same fuel. `beval c a b`
/// costs 1 plus min(inner steps, b) and stores pair(1, v) if the inner run
/// halts within b steps, else pair(0, 0); that result depends only on
/// (c, a, b), so running out of global fuel inside it exhausts the whole run.
/// `smn` costs 1. Without an oracle, `query` behaves as a query to the
/// nowhere-defined function.
Outcome run(const Index& p, const Nat& input, Fuel fuel);
Outcome run(const Index& p, const Nat& input, const RunOptions& options);
Outcome run_program(const Program& p, const Nat& input, Fuel fuel);

/// Like `run`, but `query` in the top-level program consults `oracle`:
/// an Index oracle g answers phi_g(a) inside the same fuel; a FiniteFn
/// oracle answers in the query's own step or diverges if unbound.
Outcome run_with_oracle(const Index& p, const Oracle& oracle, const Nat& input, Fuel fuel);

/// U = [X1 := first X0; X2 := second X0; X0 := eval X1 X2].
Index universal_index();

enum class Verdict { kAgree, kBothExhausted, kDisagree };

struct EquivLine {
  Nat input;
  Verdict verdict;
  Outcome left;
  Outcome right;
};

struct EquivReport {
  std::vector<EquivLine> lines;
  /// No Disagree. BothExhausted lines are evidence of equality only up to
  /// the budget, never proof.
  bool pass() const;
  std::size_t count(Verdict v) const;
  std::string to_string() const;
};

Verdict compare_outcomes(const Outcome& a, const Outcome& b);
EquivReport check_equiv(const Index& a, const Index& b, const std::vector<Nat>& inputs, Fuel fuel);

/// Drops cached decoded programs (they are otherwise kept for the process).
void clear_program_cache();

}  // namespace wb
