#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "wb/futamura.hpp"

using namespace wb;
using testing::range;

TEST_CASE("specializer as an index") {
  Index s = smn_as_index();
  Index u = universal_index();
  Outcome o = run(s, Nat::pair(u, 0), Fuel{100});
  REQUIRE(o.is_halted());
  CHECK(o.value() == smn(u, 0));
  std::mt19937_64 rng(43);
  auto corpus = testing::corpus_indices();
  for (int i = 0; i < 50; ++i) {
    Index p = rng() % 3 == 0 ? Nat(rng() % 100000) : corpus[rng() % corpus.size()];
    Nat x(rng() % 100);
    Outcome r = run(s, Nat::pair(p, x), Fuel{100});
    REQUIRE(r.is_halted());
    CHECK(r.value() == smn(p, x));
  }
}

TEST_CASE("projections on factorial") {
  Index fact = encode(lib::factorial());
  std::vector<Index> sources{Nat(0), encode(lib::successor()), fact};
  ProjectionReport r = project(fact, sources, range(0, 6), Fuel{10000000});
  CHECK_FALSE(r.indeterminate());
  CHECK(r.pass());
  for (std::uint64_t n = 0; n <= 6; ++n) CHECK(run(*r.target, n, Fuel{1000000}).value() == Nat(testing::factorial(n)));

  Outcome id = run(*r.compiler, 0, Fuel{1000});
  REQUIRE(id.is_halted());
  CHECK(check_equiv(id.value(), 0, range(0, 9), Fuel{10000}).count(Verdict::kAgree) == 10);

  const StepRow& five = r.steps[5];
  CHECK(five.target_opt.steps() < five.interpreted.steps());
  CHECK(r.trivial_ratio() < 2.0);
  CHECK(r.optimized_ratio() < 1.0);
  CHECK(r.to_string().find("FAIL") == std::string::npos);
}

TEST_CASE("target overhead is a constant") {
  Index fact = encode(lib::factorial());
  ProjectionReport r = project(fact, {}, range(0, 6), Fuel{1000000});
  for (const StepRow& row : r.steps) {
    REQUIRE(row.target.is_halted());
    CHECK(row.target.steps() == row.interpreted.steps() + 4);
    CHECK(row.target_opt.steps() + 1 == row.interpreted.steps());
  }
}

TEST_CASE("projections on a diverging source") {
  Index div = encode(lib::diverge());
  ProjectionReport r = project(div, {div}, range(0, 3), Fuel{10000});
  CHECK(r.pass());
  CHECK(r.first.report.count(Verdict::kBothExhausted) == 4);
}
