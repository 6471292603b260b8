#include "wb/functionals.hpp"

#include <algorithm>
#include <sstream>

#include "wb/builder.hpp"
#include "wb/library.hpp"

namespace wb {

Nat graph_code(const FiniteFn& t) {
  std::vector<Nat> items;
  items.reserve(t.size());
  for (const auto& [a, v] : t.entries()) items.push_back(Nat::pair(a, v));
  return encode_list(items);
}

FiniteFn graph_decode(const Nat& code) {
  FiniteFn t;
  for (const Nat& item : decode_list(code)) {
    auto [a, v] = item.unpair();
    t.bind(a, v);
  }
  return t;
}

const Template& lookup_template() {
  static const Template t = [] {
    Builder b;
    Var list = b.fresh();
    Var x = b.fresh();
    Var item = b.fresh();
    Var arg = b.fresh();
    Var val = b.fresh();
    Var same = b.fresh();
    Var found = b.fresh();
    Var result = b.fresh();
    b.destructure(list, x, X(0));
    b.while_nonzero(list, [&](Builder& loop) {
      loop.uncons(item, list, list);
      loop.destructure(arg, val, item);
      loop.eq(same, arg, x);
      loop.if_zero(same, {}, [&](Builder& hit) {
        hit.copy(result, val);
        hit.set(found, Nat(1));
        hit.set(list, Nat());
      });
    });
    b.if_zero(found, [](Builder& miss) { miss.diverge(); }, [&](Builder& hit) { hit.copy(X(0), result); });
    return Template{b.build()};
  }();
  return t;
}

Index finite_fn_index(const Nat& g) { return subst_const(lookup_template(), g); }

FiniteFn enumerate_graph(const Index& p, std::uint64_t rounds, std::optional<std::uint64_t> max_arg) {
  FiniteFn t;
  std::uint64_t last = max_arg ? std::min(rounds, *max_arg) : rounds;
  for (std::uint64_t i = 0; i <= last; ++i) {
    Outcome o = run(p, Nat(i), Fuel{rounds});
    if (o.is_halted()) t.bind(Nat(i), o.value());
  }
  return t;
}

const Template& frt_template() {
  static const Template t = [] {
    Builder b;
    Var q = b.fresh();
    Var x = b.fresh();
    Var chain = b.fresh();  // newest first
    Var budget = b.fresh();
    Var go = b.fresh();
    Var newest = b.fresh();
    Var rest = b.fresh();
    Var next = b.fresh();
    Var ascending = b.fresh();
    Var scan = b.fresh();
    Var code = b.fresh();
    Var res = b.fresh();
    Var hit = b.fresh();
    b.destructure(q, x, X(0));
    b.set(chain, Nat());
    b.set(next, encode(lib::diverge()));
    b.cons(chain, next, chain);
    b.set(budget, Nat(1));
    b.set(go, Nat(1));
    b.while_nonzero(go, [&](Builder& round) {
      round.add(budget, budget, budget);
      round.uncons(newest, rest, chain);
      round.eval(next, q, newest);
      round.cons(chain, next, chain);
      round.set(ascending, Nat());
      round.copy(scan, chain);
      round.while_nonzero(scan, [&](Builder& rev) {
        rev.uncons(code, scan, scan);
        rev.cons(ascending, code, ascending);
      });
      round.while_nonzero(ascending, [&](Builder& probe) {
        probe.uncons(code, ascending, ascending);
        probe.beval(res, code, x, budget);
        probe.first(hit, res);
        probe.if_zero(hit, {}, [&](Builder& found) {
          found.second(X(0), res);
          found.set(go, Nat());
          found.set(ascending, Nat());
        });
      });
    });
    return Template{b.build()};
  }();
  return t;
}

Index frt_lfp(const Index& q) { return subst_const(frt_template(), q); }

FiniteFn chain_oracle(const Index& q, unsigned iterations, std::uint64_t max_arg, Fuel fuel) {
  FiniteFn current;
  for (unsigned i = 0; i < iterations; ++i) {
    FiniteFn next;
    Outcome image = run(q, finite_fn_index(graph_code(current)), fuel);
    if (image.is_halted()) {
      for (std::uint64_t a = 0; a <= max_arg; ++a) {
        Outcome o = run(image.value(), Nat(a), fuel);
        if (o.is_halted()) next.bind(Nat(a), o.value());
      }
    }
    current = std::move(next);
  }
  return current;
}

const Template& standard_form_worker() {
  static const Template t = [] {
    Builder b;
    Var fy = b.fresh();
    Var x = b.fresh();
    Var f = b.fresh();
    Var y = b.fresh();
    Var lookup = b.fresh();
    Var bound = b.fresh();
    Var hit_budget = b.fresh();
    Var check_budget = b.fresh();
    Var go = b.fresh();
    Var scan = b.fresh();
    Var left = b.fresh();
    Var g = b.fresh();
    Var theta = b.fresh();
    Var image = b.fresh();
    Var res = b.fresh();
    Var hit = b.fresh();
    Var value = b.fresh();
    Var ok = b.fresh();
    Var entries = b.fresh();
    Var item = b.fresh();
    Var arg = b.fresh();
    Var expected = b.fresh();
    Var check = b.fresh();
    Var got = b.fresh();
    Var same = b.fresh();
    Var started = b.fresh();
    Var prev = b.fresh();
    Var gap = b.fresh();
    b.destructure(fy, x, X(0));
    b.destructure(f, y, fy);
    b.set(lookup, encode(lookup_template().program));
    b.set(bound, Nat(1));
    b.set(hit_budget, Nat(1));
    b.set(check_budget, Nat(1));
    b.set(go, Nat(1));
    b.while_nonzero(go, [&](Builder& round) {
      round.add(bound, bound, bound);
      round.add(hit_budget, hit_budget, hit_budget);
      round.add(check_budget, check_budget, check_budget);
      round.add(check_budget, check_budget, check_budget);
      round.set(g, Nat());
      round.copy(left, bound);
      round.set(scan, Nat(1));
      round.while_nonzero(scan, [&](Builder& each) {
        each.smn(theta, lookup, g);
        each.eval(image, f, theta);
        each.beval(res, image, x, hit_budget);
        each.first(hit, res);
        each.if_zero(hit, {}, [&](Builder& found) {
          found.second(value, res);
          // Only canonical codes (strictly ascending arguments) are
          // considered; the rest are rejected before any nested run.
          found.set(ok, Nat(1));
          found.copy(entries, g);
          found.set(started, Nat());
          found.while_nonzero(entries, [&](Builder& order) {
            order.uncons(item, entries, entries);
            order.first(arg, item);
            order.if_zero(
                started, [&](Builder& head) { head.set(started, Nat(1)); },
                [&](Builder& later) {
                  later.monus(gap, arg, prev);
                  later.if_zero(gap, [&](Builder& unsorted) {
                    unsorted.set(ok, Nat());
                    unsorted.set(entries, Nat());
                  });
                });
            order.copy(prev, arg);
          });
          found.copy(entries, g);
          found.if_zero(ok, [&](Builder& skip) { skip.set(entries, Nat()); });
          found.while_nonzero(entries, [&](Builder& verify) {
            verify.uncons(item, entries, entries);
            verify.destructure(arg, expected, item);
            verify.beval(check, y, arg, check_budget);
            verify.first(got, check);
            verify.if_zero(
                got,
                [&](Builder& missing) {
                  missing.set(ok, Nat());
                  missing.set(entries, Nat());
                },
                [&](Builder& present) {
                  present.second(got, check);
                  present.eq(same, got, expected);
                  present.if_zero(same, [&](Builder& wrong) {
                    wrong.set(ok, Nat());
                    wrong.set(entries, Nat());
                  });
                });
          });
          found.if_zero(ok, {}, [&](Builder& done) {
            done.copy(X(0), value);
            done.set(go, Nat());
            done.set(scan, Nat());
          });
        });
        each.if_zero(scan, {}, [&](Builder& advance) {
          advance.if_zero(
              left, [&](Builder& end) { end.set(scan, Nat()); },
              [&](Builder& more) {
                more.pred(left, left);
                more.succ(g, g);
              });
        });
      });
    });
    return Template{b.build()};
  }();
  return t;
}

const Template& standard_form_template() {
  static const Template t = [] {
    Builder b;
    Var w = b.fresh();
    b.set(w, encode(standard_form_worker().program));
    b.smn(X(0), w, X(0));
    return Template{b.build()};
  }();
  return t;
}

Index standard_form(const Index& f) { return subst_const(standard_form_template(), f); }

Index lfp_via_stdform(const Index& f) { return rogers_n(standard_form(f)); }

Program counterexample_blueprint() {
  Builder b;
  Var self = b.fresh();
  Var x = b.fresh();
  Var n = b.fresh();
  Var nu = b.fresh();
  Var same = b.fresh();
  b.destructure(self, x, X(0));
  b.set(n, rogers_n_index());
  b.eval(nu, n, self);
  b.eq_struct(same, x, nu);
  b.if_zero(
      same, [&](Builder& other) { other.copy(X(0), x); },
      [&](Builder& fixed) { fixed.set(X(0), encode(lib::constant_zero())); });
  return b.build();
}

Index counterexample_index() {
  static const Index m = kleene_fix(encode(counterexample_blueprint()));
  return m;
}

namespace {

bool all_halt_with(const std::vector<Outcome>& v, const Nat& value) {
  return !v.empty() && std::all_of(v.begin(), v.end(), [&](const Outcome& o) { return o.is_halted() && o.value() == value; });
}

bool all_exhausted(const std::vector<Outcome>& v) {
  return !v.empty() && std::all_of(v.begin(), v.end(), [](const Outcome& o) { return o.is_exhausted(); });
}

}  // namespace

bool CounterexampleReport::off_singularity_ok() const {
  return std::all_of(off_singularity.begin(), off_singularity.end(), [](const auto& p) {
    return p.second.is_halted() && p.second.value() == p.first;
  });
}

bool CounterexampleReport::at_singularity_ok() const {
  return at_singularity.is_halted() && at_singularity.value() == encode(lib::constant_zero());
}

bool CounterexampleReport::srt_is_zero() const { return all_halt_with(srt_point, Nat()); }
bool CounterexampleReport::frt_is_empty() const { return all_exhausted(frt_point); }
bool CounterexampleReport::stdform_is_empty() const { return all_exhausted(stdform_point); }

bool CounterexampleReport::separated() const {
  return off_singularity_ok() && at_singularity_ok() && srt_is_zero() && frt_is_empty() && stdform_is_empty();
}

std::string CounterexampleReport::to_string() const {
  std::ostringstream os;
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  os << "m = " << m.describe() << '\n';
  os << "n(m) = " << fixed.describe() << '\n';
  os << verdict(off_singularity_ok()) << " phi_m(x) = x off n(m):";
  for (const auto& [x, o] : off_singularity) os << ' ' << x.describe() << "->" << o.to_string();
  os << '\n';
  os << verdict(at_singularity_ok()) << " phi_m(n(m)) = t: " << at_singularity.to_string() << '\n';
  auto line = [&](const char* what, const std::vector<Outcome>& v, bool ok) {
    os << verdict(ok) << ' ' << what << ':';
    for (std::size_t i = 0; i < v.size(); ++i) os << ' ' << inputs[i].describe() << "->" << v[i].to_string();
    os << '\n';
  };
  line("srt fixed point n(m) is constant zero", srt_point, srt_is_zero());
  line("dovetailed lfp of m is empty", frt_point, frt_is_empty());
  line("standard-form lfp of m is empty", stdform_point, stdform_is_empty());
  os << (separated() ? "SEPARATED" : "NOT SEPARATED") << '\n';
  return os.str();
}

CounterexampleReport nonminimal_counterexample(const std::vector<Nat>& inputs, Fuel fuel) {
  CounterexampleReport r{counterexample_index(), Nat(), {}, Outcome::exhausted(0), {}, {}, {}, inputs};
  r.fixed = rogers_n(r.m);
  for (const Nat& x : inputs) r.off_singularity.emplace_back(x, run(r.m, x, fuel));
  for (const auto& np : lib::corpus()) {
    Index c = encode(np.program);
    r.off_singularity.emplace_back(c, run(r.m, c, fuel));
  }
  r.at_singularity = run(r.m, r.fixed, fuel);
  Index frt = frt_lfp(r.m);
  Index least = lfp_via_stdform(r.m);
  for (const Nat& x : inputs) {
    r.srt_point.push_back(run(r.fixed, x, fuel));
    r.frt_point.push_back(run(frt, x, fuel));
    r.stdform_point.push_back(run(least, x, fuel));
  }
  return r;
}

Outcome run_oracle(const OracleProgram& f, const Oracle& oracle, const Nat& input, Fuel fuel) {
  return run_with_oracle(encode(f), oracle, input, fuel);
}

namespace {

Block replace_queries(const Block& b, const Nat& code_reg) {
  Block out;
  out.reserve(b.size());
  for (const Stmt& s : b) {
    Stmt c = s;
    if (s.op == Op::kQuery) {
      c.op = Op::kEval;
      c.b = s.a;
      c.a = code_reg;
    }
    c.body = replace_queries(s.body, code_reg);
    c.alt = replace_queries(s.alt, code_reg);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Program odifreddi_blueprint(const OracleProgram& f) {
  Nat e = max_register(f.body).succ();
  Block body;
  Stmt split_code;
  split_code.op = Op::kFirst;
  split_code.dst = e;
  body.push_back(split_code);
  Stmt split_arg;
  split_arg.op = Op::kSecond;
  body.push_back(split_arg);
  Block rest = replace_queries(f.body, e);
  body.insert(body.end(), rest.begin(), rest.end());
  return Program{std::move(body)};
}

Index odifreddi_lfp(const OracleProgram& f) { return kleene_fix(encode(odifreddi_blueprint(f))); }

Index induced_transformer(const OracleProgram& f) {
  Builder b;
  Var t = b.fresh();
  b.set(t, encode(odifreddi_blueprint(f)));
  b.smn(X(0), t, X(0));
  return encode(b.build());
}

const Template& sasso_template() {
  static const Template t = [] {
    Builder b;
    Var g = b.fresh();
    Var x = b.fresh();
    Var even = b.fresh();
    Var odd = b.fresh();
    Var budget = b.fresh();
    Var go = b.fresh();
    Var res = b.fresh();
    Var rest = b.fresh();
    b.destructure(g, x, X(0));
    b.add(even, x, x);
    b.succ(odd, even);
    b.set(budget, Nat(1));
    b.set(go, Nat(1));
    // pair(1, 0) = 1, so a zero answer is exactly res == 1.
    auto try_point = [&](Builder& blk, Var point) {
      blk.beval(res, g, point, budget);
      blk.if_zero(res, {}, [&](Builder& halted) {
        halted.pred(rest, res);
        halted.if_zero(rest, [&](Builder& zero) { zero.set(go, Nat()); });
      });
    };
    b.while_nonzero(go, [&](Builder& round) {
      try_point(round, even);
      round.if_zero(go, {}, [&](Builder& again) { try_point(again, odd); });
      round.succ(budget, budget);
    });
    b.set(X(0), Nat());
    return Template{b.build()};
  }();
  return t;
}

Index sasso_op() {
  static const Index op = [] {
    Builder b;
    Var t = b.fresh();
    b.set(t, encode(sasso_template().program));
    b.smn(X(0), t, X(0));
    return encode(b.build());
  }();
  return op;
}

namespace {

OracleProgram sasso_query(bool even_first) {
  Builder b;
  Var even = b.fresh();
  Var odd = b.fresh();
  Var v = b.fresh();
  b.add(even, X(0), X(0));
  b.succ(odd, even);
  Var first = even_first ? even : odd;
  Var second = even_first ? odd : even;
  b.query(v, first);
  b.if_zero(
      v, [](Builder& zero) { zero.set(X(0), Nat()); },
      [&](Builder& nonzero) {
        nonzero.query(v, second);
        nonzero.if_zero(
            v, [](Builder& zero) { zero.set(X(0), Nat()); }, [](Builder& undefined) { undefined.diverge(); });
      });
  return b.build_oracle();
}

}  // namespace

OracleProgram sasso_query_left() { return sasso_query(true); }
OracleProgram sasso_query_right() { return sasso_query(false); }

bool SassoReport::separated() const {
  if (cases.size() != 3) return false;
  const SassoCase& even = cases[0];
  const SassoCase& odd = cases[1];
  const SassoCase& none = cases[2];
  auto zero = [](const Outcome& o) { return o.is_halted() && o.value().is_zero(); };
  return zero(even.worker) && zero(odd.worker) && none.worker.is_exhausted() && zero(even.left) &&
         even.right.is_exhausted() && zero(odd.right) && odd.left.is_exhausted();
}

std::string SassoReport::to_string() const {
  std::ostringstream os;
  os << "x = " << x.describe() << '\n';
  for (const auto& c : cases) {
    os << c.name << ": dovetailed " << c.worker.to_string() << " | left-first " << c.left.to_string()
       << " | right-first " << c.right.to_string() << '\n';
  }
  os << (separated() ? "SEPARATED" : "NOT SEPARATED") << '\n';
  return os.str();
}

SassoReport sasso_demo(const Nat& x, Fuel fuel) {
  SassoReport report{x, {}};
  if (!x.is_small() || x.small() >= Nat::kLiteralBound / 2) throw std::invalid_argument("sasso_demo: x too large");
  Nat even(2 * x.small());
  Nat odd = even.succ();
  const std::vector<std::pair<std::string, FiniteFn>> oracles = {
      {"{2x->0}", FiniteFn{{even, Nat()}}},
      {"{2x+1->0}", FiniteFn{{odd, Nat()}}},
      {"{}", FiniteFn{}},
  };
  const Index left = encode(sasso_query_left());
  const Index right = encode(sasso_query_right());
  for (const auto& [name, table] : oracles) {
    Nat g = graph_code(table);
    Index oracle = finite_fn_index(g);
    Outcome worker = run(subst_const(sasso_template(), oracle), x, fuel);
    report.cases.push_back(SassoCase{name, g, worker, run_with_oracle(left, oracle, x, fuel),
                                     run_with_oracle(right, oracle, x, fuel)});
  }
  return report;
}

std::string CompactnessReport::to_string() const {
  std::ostringstream os;
  auto show = [](const FiniteFn& t) {
    std::string s = "{";
    for (const auto& [a, v] : t.entries()) {
      if (s.size() > 1) s += ", ";
      s += a.describe() + "->" + v.describe();
    }
    return s + "}";
  };
  switch (status) {
    case kFound:
      os << "FOUND " << show(*witness) << " code=" << graph_code(*witness).describe() << " target=" << target.describe()
         << " after " << candidates << " candidates\n";
      break;
    case kNotFound:
      os << "NOT-FOUND within " << candidates << " candidates of " << show(graph) << " (not a refutation)\n";
      break;
    case kIndeterminate:
      os << "INDETERMINATE F(phi_g)(x) did not halt within the budget\n";
      break;
  }
  return os.str();
}

CompactnessReport compactness_probe(const Index& q, const Index& g, const Nat& x, Fuel fuel,
                                    std::uint64_t rounds, std::uint64_t max_arg, std::size_t max_candidates) {
  CompactnessReport report;
  Outcome image = run(q, g, fuel);
  if (image.is_exhausted()) {
    report.status = CompactnessReport::kIndeterminate;
    return report;
  }
  Outcome full = run(image.value(), x, fuel);
  if (full.is_exhausted()) {
    report.status = CompactnessReport::kIndeterminate;
    return report;
  }
  report.target = full.value();
  report.graph = enumerate_graph(g, rounds, max_arg);

  const auto& entries = report.graph.entries();
  if (entries.size() > 20) throw std::invalid_argument("compactness_probe: enumerated graph too large");
  std::vector<std::pair<Nat, FiniteFn>> subsets;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << entries.size()); ++mask) {
    FiniteFn t;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) t.bind(entries[i].first, entries[i].second);
    subsets.emplace_back(graph_code(t), std::move(t));
  }
  std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  for (const auto& [code, theta] : subsets) {
    if (report.candidates >= max_candidates) break;
    ++report.candidates;
    Outcome partial = run(q, finite_fn_index(code), fuel);
    if (partial.is_exhausted()) continue;
    Outcome o = run(partial.value(), x, fuel);
    if (o.is_halted() && o.value() == report.target) {
      report.status = CompactnessReport::kFound;
      report.witness = theta;
      return report;
    }
  }
  return report;
}

}  // namespace wb
