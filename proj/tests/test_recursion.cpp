#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "frozen.hpp"
#include "support.hpp"
#include "wb/recursion.hpp"

using namespace wb;
using testing::blueprints;
using testing::constant_blueprint;
using testing::quine_blueprint;
using testing::range;
using testing::total_transformers;

TEST_CASE("kleene fixed point of the factorial blueprint") {
  Index e = kleene_fix(encode(lib::factorial_blueprint()));
  for (std::uint64_t n = 0; n <= 6; ++n) CHECK(run(e, n, Fuel{10000000}).value() == Nat(testing::factorial(n)));
}

TEST_CASE("kleene fixed point shape") {
  for (const Index& p : testing::corpus_indices()) {
    Index q = subst_const(kleene_template(), p);
    CHECK(kleene_fix(p) == smn(q, q));
  }
}

TEST_CASE("constant blueprint") {
  Index e = kleene_fix(constant_blueprint(42));
  for (auto y : range(0, 9)) CHECK(run(e, y, Fuel{10000}).value() == Nat(42));
}

TEST_CASE("self reproduction") {
  Index e = kleene_fix(quine_blueprint());
  Outcome o = run(e, 0, Fuel{10000});
  REQUIRE(o.is_halted());
  CHECK(o.value() == e);
}

TEST_CASE("kleene law on sampled blueprints") {
  for (const Index& p : blueprints()) {
    Index e = kleene_fix(p);
    for (auto y : range(0, 9)) {
      Outcome lhs = run(e, y, Fuel{100000});
      Outcome rhs = run(p, Nat::pair(e, y), Fuel{100000});
      CHECK(compare_outcomes(lhs, rhs) != Verdict::kDisagree);
    }
  }
}

TEST_CASE("in-language H agrees with host h") {
  Index h = kleene_h_index();
  for (std::uint64_t p = 0; p < 100; ++p) {
    Outcome o = run(h, p, Fuel{1000});
    REQUIRE(o.is_halted());
    CHECK(o.value() == kleene_h(p));
  }
  Index fb = encode(lib::factorial_blueprint());
  Outcome o = run(h, fb, Fuel{1000});
  REQUIRE(o.is_halted());
  CHECK(o.value() == kleene_h(fb));
  for (std::uint64_t n = 0; n <= 6; ++n)
    CHECK(run(o.value(), n, Fuel{10000000}).value() == Nat(testing::factorial(n)));
}

TEST_CASE("h law") {
  for (const Index& p : blueprints()) {
    Index hp = kleene_h(p);
    for (auto y : range(0, 9))
      CHECK(compare_outcomes(run(hp, y, Fuel{100000}), run(p, Nat::pair(hp, y), Fuel{100000})) !=
            Verdict::kDisagree);
  }
}

TEST_CASE("in-language N agrees with host n") {
  Index n = rogers_n_index();
  for (std::uint64_t z = 0; z < 100; ++z) {
    Outcome o = run(n, z, Fuel{1000});
    REQUIRE(o.is_halted());
    CHECK(o.value() == rogers_n(z));
  }
  for (const Index& z : total_transformers()) CHECK(run(n, z, Fuel{1000}).value() == rogers_n(z));
}

TEST_CASE("n law on total transformers") {
  for (const Index& z : total_transformers()) {
    Index nz = rogers_n(z);
    Outcome image = run(z, nz, Fuel{100000});
    REQUIRE(image.is_halted());
    EquivReport r = check_equiv(nz, image.value(), range(0, 9), Fuel{100000});
    CHECK_MESSAGE(r.pass(), r.to_string());
  }
}

TEST_CASE("rogers fixed point of the constant-zero transformer") {
  Index f = encode(lib::constant_transformer(Nat(frozen::kConstantZeroIndex)));
  Index e = rogers_fix(f);
  for (auto x : range(0, 9)) CHECK(run(e, x, Fuel{100000}).value() == Nat(0));
  RogersResult r = rogers_fix_checked(f, range(0, 9), Fuel{100000});
  CHECK(r.verdict == RogersResult::kFixed);
  CHECK(*r.image == Nat(frozen::kConstantZeroIndex));
}

TEST_CASE("rogers fixed point of the identity transformer") {
  RogersResult r = rogers_fix_checked(encode(lib::identity_transformer()), range(0, 9), Fuel{10000});
  CHECK(r.verdict == RogersResult::kFixed);
  CHECK(*r.image == r.e);
  CHECK(r.equiv->count(Verdict::kBothExhausted) == 10);
}

TEST_CASE("rogers fixed point of the parity transformer") {
  Index f = encode(lib::parity_transformer());
  RogersResult r = rogers_fix_checked(f, range(0, 3), Fuel{100000});
  // Deciding the parity of e in-language counts e down to zero.
  CHECK(r.verdict == RogersResult::kIndeterminate);
  CHECK(r.to_string().find("INDETERMINATE") != std::string::npos);
  Index image = r.e.is_even() ? r.e.succ() : r.e.pred();
  CHECK(image != r.e);
  CHECK(image.is_even() != r.e.is_even());
  // phi_e runs f on e before anything else, so it never gets past the count.
  for (auto x : range(0, 3)) CHECK(run(r.e, x, Fuel{100000}).is_exhausted());
}
