#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wb/evaluator.hpp"
#include "wb/recursion.hpp"
#include "wb/specializer.hpp"

namespace wb {

// Finite functions and their graph codes.

/// Encoding of the entry list pair(arg, value), sorted by argument.
Nat graph_code(const FiniteFn& t);
/// Total: any natural decodes as an entry list; a repeated argument keeps
/// its first binding.
FiniteFn graph_decode(const Nat& code);

/// On pair(g, x): linear search of the entry list g for x; outputs the bound
/// value, loops forever if x is unbound.
const Template& lookup_template();
/// subst_const(lookup_template(), g): an index of the finite function coded by g.
Index finite_fn_index(const Nat& g);

/// {(i, v) : i <= rounds, i <= max_arg, run(p, i, rounds) = HALT v}.
FiniteFn enumerate_graph(const Index& p, std::uint64_t rounds,
                         std::optional<std::uint64_t> max_arg = std::nullopt);

// The first recursion theorem, by dovetailing.

/// On pair(q, x): round r = 1, 2, ... extends the chain p_0 = DIV,
/// p_{i+1} = phi_q(p_i) by one element, then tries beval(p_i, x, 2^r) for
/// i = 0..r in ascending order and halts with the first value found.
const Template& frt_template();
Index frt_lfp(const Index& q);

/// Host iteration f_0 = {}, f_{i+1} = F(f_i) for `iterations` steps, where
/// F(theta) is the graph of phi_q(d(theta)) on arguments 0..max_arg.
FiniteFn chain_oracle(const Index& q, unsigned iterations, std::uint64_t max_arg, Fuel fuel);

// The standard form of an extensional transformer.

/// On pair(pair(f, y), x): rounds r = 1, 2, ... with graph bound 2^r, hit
/// budget 2^r and verification budget 4^r. For each graph code g in
/// 0..2^r, runs phi_f(d(g)) on x; on a hit with value t, checks every entry
/// (a, b) of g against phi_y(a) = b and halts with t if all agree.
const Template& standard_form_worker();
/// On pair(f, y): smn(worker, pair(f, y)).
const Template& standard_form_template();
/// v with phi_v = h_f.
Index standard_form(const Index& f);
/// n(standard_form(f)).
Index lfp_via_stdform(const Index& f);

// Rogers' non-minimal fixed point.

/// On pair(self, x): nu := N(self) computed in-language; outputs t = 1 if
/// x and nu are the same code, else x.
Program counterexample_blueprint();
/// m = kleene_fix(counterexample_blueprint()).
Index counterexample_index();

struct CounterexampleReport {
  Index m;
  Index fixed;  // n(m)
  std::vector<std::pair<Nat, Outcome>> off_singularity;  // (a): phi_m(x) for x != n(m)
  Outcome at_singularity;                                // (b): phi_m(n(m))
  std::vector<Outcome> srt_point;                        // (c): phi_{n(m)}(x)
  std::vector<Outcome> frt_point;                        // phi_{frt_lfp(m)}(x)
  std::vector<Outcome> stdform_point;                    // phi_{lfp_via_stdform(m)}(x)
  std::vector<Nat> inputs;

  bool off_singularity_ok() const;
  bool at_singularity_ok() const;
  bool srt_is_zero() const;
  bool frt_is_empty() const;
  bool stdform_is_empty() const;
  bool separated() const;
  std::string to_string() const;
};

CounterexampleReport nonminimal_counterexample(const std::vector<Nat>& inputs, Fuel fuel);

// Oracle programs.

Outcome run_oracle(const OracleProgram& f, const Oracle& oracle, const Nat& input, Fuel fuel);
/// F with every query(dst, a) replaced by eval(dst, Xe, a), after a prologue
/// splitting pair(e, x) into Xe and X0; Xe is one past F's largest register.
Program odifreddi_blueprint(const OracleProgram& f);
/// kleene_fix(odifreddi_blueprint(f)).
Index odifreddi_lfp(const OracleProgram& f);
/// c -> smn(odifreddi_blueprint(f), c): phi of the result is F(phi_c).
Index induced_transformer(const OracleProgram& f);

// Sasso's functional.

/// On pair(g, x): for b = 1, 2, ..., tries beval(g, 2x, b) then
/// beval(g, 2x + 1, b) and halts with 0 on the first pair(1, 0).
const Template& sasso_template();
/// g -> subst_const(sasso_template(), g).
Index sasso_op();
/// Deterministic oracle programs querying 2x first, resp. 2x + 1 first.
OracleProgram sasso_query_left();
OracleProgram sasso_query_right();

struct SassoCase {
  std::string name;
  Nat graph;
  Outcome worker;
  Outcome left;
  Outcome right;
};

struct SassoReport {
  Nat x;
  std::vector<SassoCase> cases;
  bool separated() const;
  std::string to_string() const;
};

/// The oracles {2x -> 0}, {2x+1 -> 0} and {} at x.
SassoReport sasso_demo(const Nat& x, Fuel fuel);

// Compactness.

struct CompactnessReport {
  enum Status { kFound, kNotFound, kIndeterminate };
  Status status = kNotFound;
  Nat target;                // F(phi_g)(x)
  FiniteFn graph;            // enumerated part of phi_g
  std::optional<FiniteFn> witness;
  std::size_t candidates = 0;  // graph codes tried
  std::string to_string() const;
};

/// Searches finite subfunctions theta of enumerate_graph(g, rounds, max_arg),
/// in ascending graph-code order and at most `max_candidates` of them, for
/// one with F(theta)(x) = F(phi_g)(x).
CompactnessReport compactness_probe(const Index& q, const Index& g, const Nat& x, Fuel fuel,
                                    std::uint64_t rounds, std::uint64_t max_arg,
                                    std::size_t max_candidates = 200);

}  // namespace wb
