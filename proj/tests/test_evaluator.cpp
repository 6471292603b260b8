#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "frozen.hpp"
#include "support.hpp"
#include "wb/specializer.hpp"

using namespace wb;
using testing::range;

namespace {

const Index kDiv(frozen::kDivIndex);

Index another_div() {
  Builder b;
  b.set(X(3), 5).while_nonzero(X(3), [](Builder& in) { in.succ(X(3), X(3)); });
  return encode(b.build());
}

}  // namespace

TEST_CASE("universal index is frozen") {
  CHECK(universal_index() == Nat::from_decimal(std::string(frozen::kUniversalIndex)));
}

TEST_CASE("identity and divergence") {
  CHECK(run(Nat(0), 5, Fuel{10}) == Outcome::halted(5, 0));
  for (auto x : range(0, 9)) CHECK(run(kDiv, x, Fuel{1000}) == Outcome::exhausted(1000));
}

TEST_CASE("factorial step counts") {
  const std::uint64_t steps[] = {frozen::kFactorialSteps0, frozen::kFactorialSteps1, frozen::kFactorialSteps2,
                                 frozen::kFactorialSteps3, frozen::kFactorialSteps4, frozen::kFactorialSteps5,
                                 frozen::kFactorialSteps6};
  Index fact = encode(lib::factorial());
  for (std::uint64_t n = 0; n <= 6; ++n)
    CHECK(run(fact, n, Fuel{1000000}) == Outcome::halted(testing::factorial(n), steps[n]));
}

TEST_CASE("exact budget boundary") {
  Index fact = encode(lib::factorial());
  std::uint64_t s = frozen::kFactorialSteps5;
  CHECK(run(fact, 5, Fuel{s}).is_halted());
  CHECK(run(fact, 5, Fuel{s - 1}) == Outcome::exhausted(s - 1));
  CHECK(run(fact, 5, Fuel{0}).is_exhausted());
  CHECK(run(Nat(0), 5, Fuel{0}).is_halted());
}

TEST_CASE("universal program") {
  Index u = universal_index();
  CHECK(run(u, Nat::pair(0, 7), Fuel{100}).value() == Nat(7));
  CHECK(run(u, Nat::pair(encode(lib::factorial()), 4), Fuel{1000000}) ==
        Outcome::halted(24, frozen::kUniversalFactorial4Steps));
  CHECK(run(u, Nat::pair(kDiv, 0), Fuel{10000}).is_exhausted());
}

TEST_CASE("beval reports halting within its own budget") {
  Builder b;
  b.set(X(1), Nat(frozen::kSuccIndex)).set(X(2), 5).beval(X(0), X(1), X(0), X(2));
  Outcome o = run_program(b.build(), 4, Fuel{1000});
  CHECK(o == Outcome::halted(frozen::kBevalProbeValue, frozen::kBevalProbeSteps));
  CHECK(o.value() == Nat::pair(1, 5));

  Builder d;
  d.set(X(1), kDiv).set(X(2), 50).beval(X(0), X(1), X(0), X(2));
  CHECK(run_program(d.build(), 4, Fuel{1000}).value() == Nat(0));
  // The inner budget is not enough, and the outer fuel runs out first.
  CHECK(run_program(d.build(), 4, Fuel{30}).is_exhausted());
}

TEST_CASE("beval result depends only on code, argument and budget") {
  Index fact = encode(lib::factorial());
  for (std::uint64_t budget : {1ULL, 100ULL, 1837ULL, 1838ULL, 5000ULL}) {
    Builder b;
    b.set(X(1), fact).set(X(2), budget).beval(X(0), X(1), X(0), X(2));
    Outcome o = run_program(b.build(), 5, Fuel{100000});
    REQUIRE(o.is_halted());
    bool fits = budget >= frozen::kFactorialSteps5;
    CHECK(o.value() == (fits ? Nat::pair(1, 120) : Nat(0)));
  }
}

TEST_CASE("nested beval deadlines unwind to the right frame") {
  // Outer beval with a large budget around an inner beval of DIV with a small one.
  Builder inner;
  inner.set(X(1), kDiv).set(X(2), 20).beval(X(0), X(1), X(0), X(2));
  Index in = encode(inner.build());
  Builder outer;
  outer.set(X(1), in).set(X(2), 1000).beval(X(0), X(1), X(0), X(2));
  Outcome o = run_program(outer.build(), 3, Fuel{100000});
  CHECK(o.value() == Nat::pair(1, 0));
}

TEST_CASE("query without an oracle diverges") {
  Nat q = encode_list({Nat::pair(12, Nat::pair(0, 0))});
  CHECK(run(q, 3, Fuel{500}) == Outcome::exhausted(500));
}

TEST_CASE("oracle runs") {
  Builder b;
  b.query(X(0), X(0));
  Index f = encode(b.build_oracle());
  for (auto x : range(0, 9)) {
    CHECK(run_with_oracle(f, Nat(0), x, Fuel{100}).value() == x);
    CHECK(run_with_oracle(f, FiniteFn{}, x, Fuel{100}).is_exhausted());
  }
  CHECK(run_with_oracle(f, FiniteFn{{3, 9}}, 3, Fuel{100}) == Outcome::halted(9, 1));
  Index fo = encode(lib::factorial_oracle());
  Index fact = encode(lib::factorial());
  for (std::uint64_t y = 0; y <= 5; ++y)
    CHECK(run_with_oracle(fo, fact, y, Fuel{1000000}).value() == Nat(testing::factorial(y)));
}

TEST_CASE("trace sees every statement") {
  std::uint64_t count = 0;
  RunOptions opts;
  opts.fuel = Fuel{100000};
  opts.trace = [&](const TraceEvent& e) {
    ++count;
    CHECK(e.step == count);
  };
  Outcome o = run(encode(lib::factorial()), 3, opts);
  CHECK(o.steps() == count);
}

TEST_CASE("equivalence checks") {
  Index succ(frozen::kSuccIndex);
  auto inputs = range(0, 9);
  EquivReport same = check_equiv(Nat(0), compose_codes(0, 0), inputs, Fuel{10000});
  CHECK(same.count(Verdict::kAgree) == 10);
  EquivReport loops = check_equiv(kDiv, another_div(), inputs, Fuel{10000});
  CHECK(loops.count(Verdict::kBothExhausted) == 10);
  CHECK(loops.pass());
  EquivReport diff = check_equiv(Nat(0), succ, inputs, Fuel{10000});
  CHECK(diff.count(Verdict::kDisagree) == 10);
  CHECK_FALSE(diff.pass());
  CHECK(diff.to_string().find("DISAGREE") != std::string::npos);
}

TEST_CASE("outcome text") {
  CHECK(Outcome::halted(120, 7).to_string() == "HALT 120 steps=7");
  CHECK(Outcome::exhausted(9).to_string() == "EXHAUSTED fuel=9");
}

TEST_CASE("determinism on random indices") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 400; ++i) {
    Nat p(rng() % 100000000);
    Nat x(rng() % 50);
    Outcome a = run(p, x, Fuel{2000});
    clear_program_cache();
    Outcome b = run(p, x, Fuel{2000});
    CHECK(a == b);
  }
}

TEST_CASE("fuel monotonicity on generated programs") {
  testing::ProgramGen gen(23);
  for (int i = 0; i < 300; ++i) {
    Index p = encode(gen.program());
    Nat x(gen.below(30));
    Outcome small = run(p, x, Fuel{300});
    Outcome large = run(p, x, Fuel{3000});
    if (small.is_halted()) CHECK(large == small);
    if (large.is_exhausted()) CHECK(small.is_exhausted());
  }
}

TEST_CASE("evaluation is reentrant across threads") {
  Index fact = encode(lib::factorial());
  std::vector<Outcome> out(4, Outcome::exhausted(0));
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] { out[t] = run(fact, 6, Fuel{1000000}); });
  for (auto& th : threads) th.join();
  for (const auto& o : out) CHECK(o == Outcome::halted(720, frozen::kFactorialSteps6));
}
