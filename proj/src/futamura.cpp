#include "wb/futamura.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "wb/builder.hpp"

namespace wb {

Index smn_as_index() {
  static const Index s = [] {
    Builder b;
    b.first(X(1), X(0));
    b.second(X(2), X(0));
    b.smn(X(0), X(1), X(2));
    return encode(b.build());
  }();
  return s;
}

namespace {

std::optional<Index> apply(const Index& p, const Nat& input, Fuel fuel) {
  Outcome o = run(p, input, fuel);
  if (o.is_halted()) return o.value();
  return std::nullopt;
}

LawCheck law(const Index& source, std::optional<Index> compiled, const std::vector<Nat>& inputs, Fuel fuel) {
  LawCheck c{source, std::move(compiled), {}};
  if (c.compiled) c.report = check_equiv(*c.compiled, source, inputs, fuel);
  return c;
}

double ratio(const std::vector<StepRow>& rows, bool optimized) {
  double num = 0;
  double den = 0;
  for (const auto& r : rows) {
    const Outcome& t = optimized ? r.target_opt : r.target;
    if (!t.is_halted() || !r.interpreted.is_halted()) continue;
    num += static_cast<double>(t.steps());
    den += static_cast<double>(r.interpreted.steps());
  }
  return den == 0 ? 0.0 : num / den;
}

}  // namespace

bool ProjectionReport::indeterminate() const {
  return !target || !compiler || !cogen || !generated_compiler;
}

bool ProjectionReport::pass() const {
  auto all = [](const std::vector<LawCheck>& v) {
    return std::all_of(v.begin(), v.end(), [](const LawCheck& c) { return c.pass(); });
  };
  return !indeterminate() && first.pass() && all(second) && all(third);
}

double ProjectionReport::trivial_ratio() const { return ratio(steps, false); }
double ProjectionReport::optimized_ratio() const { return ratio(steps, true); }

std::string ProjectionReport::to_string() const {
  std::ostringstream os;
  auto idx = [](const std::optional<Index>& i) { return i ? i->describe() : std::string("INDETERMINATE"); };
  auto verdict = [](bool ok) { return ok ? "PASS" : "FAIL"; };
  os << "source " << source.describe() << '\n';
  os << "target " << idx(target) << '\n';
  os << "compiler " << idx(compiler) << '\n';
  os << "cogen " << idx(cogen) << '\n';
  os << verdict(first.pass()) << " first projection: target ~ source\n";
  for (const auto& c : second)
    os << verdict(c.pass()) << " second projection on " << c.source.describe() << '\n';
  for (const auto& c : third)
    os << verdict(c.pass()) << " third projection on " << c.source.describe() << '\n';
  os << "input interpreted target target-opt\n";
  auto cell = [](const Outcome& o) { return o.is_halted() ? std::to_string(o.steps()) : std::string("EXHAUSTED"); };
  for (const auto& r : steps)
    os << r.input.describe() << ' ' << cell(r.interpreted) << ' ' << cell(r.target) << ' ' << cell(r.target_opt)
       << '\n';
  os << std::fixed << std::setprecision(4) << "ratio trivial " << trivial_ratio() << " optimized "
     << optimized_ratio() << '\n';
  return os.str();
}

ProjectionReport project(const Index& source, const std::vector<Index>& sources, const std::vector<Nat>& inputs,
                         Fuel fuel) {
  const Index s = smn_as_index();
  const Index u = universal_index();
  ProjectionReport r;
  r.source = source;
  r.target = apply(s, Nat::pair(u, source), fuel);
  r.compiler = apply(s, Nat::pair(s, u), fuel);
  r.cogen = apply(s, Nat::pair(s, s), fuel);
  if (r.cogen) r.generated_compiler = apply(*r.cogen, u, fuel);
  r.target_opt = smn_opt(u, source);

  r.first = law(source, r.target, inputs, fuel);
  for (const Index& src : sources) {
    r.second.push_back(law(src, r.compiler ? apply(*r.compiler, src, fuel) : std::nullopt, inputs, fuel));
    r.third.push_back(
        law(src, r.generated_compiler ? apply(*r.generated_compiler, src, fuel) : std::nullopt, inputs, fuel));
  }
  for (const Nat& x : inputs) {
    StepRow row{x, run(u, Nat::pair(source, x), fuel), Outcome::exhausted(fuel.budget), run(r.target_opt, x, fuel)};
    if (r.target) row.target = run(*r.target, x, fuel);
    r.steps.push_back(std::move(row));
  }
  return r;
}

}  // namespace wb
