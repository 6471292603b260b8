#pragma once

#include <random>
#include <vector>

#include "wb/builder.hpp"
#include "wb/evaluator.hpp"
#include "wb/library.hpp"

namespace testing {

using namespace wb;

inline std::vector<Nat> range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<Nat> out;
  for (std::uint64_t i = lo; i <= hi; ++i) out.emplace_back(i);
  return out;
}

inline std::vector<Index> corpus_indices() {
  std::vector<Index> out;
  for (const auto& np : lib::corpus()) out.push_back(encode(np.program));
  return out;
}

inline Index code(const Program& p) { return encode(p); }

inline std::uint64_t factorial(std::uint64_t n) { return n == 0 ? 1 : n * factorial(n - 1); }

/// Random structured program over registers X0..X4 without reflective
/// statements other than eval of small constants.
class ProgramGen {
 public:
  explicit ProgramGen(std::uint64_t seed) : rng_(seed) {}

  Program program(int max_len = 6) {
    Program p;
    p.body = block(max_len, 2);
    return p;
  }

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }

 private:
  Nat reg() { return Nat(below(5)); }

  Block block(int max_len, int depth) {
    Block b;
    int len = static_cast<int>(below(static_cast<std::uint64_t>(max_len) + 1));
    for (int i = 0; i < len; ++i) b.push_back(stmt(depth));
    return b;
  }

  Stmt stmt(int depth) {
    Stmt s;
    std::uint64_t k = below(depth > 0 ? 13 : 11);
    s.dst = reg();
    s.a = reg();
    s.b = reg();
    s.c = reg();
    switch (k) {
      case 0: s.op = Op::kConst; s.value = Nat(below(50)); break;
      case 1: s.op = Op::kCopy; break;
      case 2: s.op = Op::kSucc; break;
      case 3: s.op = Op::kPred; break;
      case 4: s.op = Op::kPair; break;
      case 5: s.op = Op::kFirst; break;
      case 6: s.op = Op::kSecond; break;
      case 7: s.op = Op::kSmn; break;
      case 8: s.op = Op::kEval; break;
      case 9: s.op = Op::kBEval; break;
      case 10: s.op = Op::kNop; s.value = Nat::pair(Nat(13 + below(20)), Nat(below(20))); break;
      case 11:
        s.op = Op::kWhile;
        s.body = block(3, depth - 1);
        break;
      default:
        s.op = Op::kIfZero;
        s.body = block(3, depth - 1);
        s.alt = block(3, depth - 1);
        break;
    }
    if (s.op != Op::kBEval) s.c = Nat();
    if (s.op != Op::kPair && s.op != Op::kEval && s.op != Op::kSmn && s.op != Op::kBEval) s.b = Nat();
    if (s.op == Op::kConst || s.op == Op::kNop) s.a = Nat();
    if (s.op == Op::kNop) s.dst = Nat();
    if (s.op == Op::kWhile || s.op == Op::kIfZero) s.a = Nat();
    return s;
  }

  std::mt19937_64 rng_;
};

inline Index constant_blueprint(std::uint64_t v) {
  Builder b;
  b.set(X(0), v);
  return encode(b.build());
}

/// pair(self, y) -> self.
inline Index quine_blueprint() {
  Builder b;
  b.first(X(0), X(0));
  return encode(b.build());
}

/// Thirty blueprints: the corpus, a few named ones, then generated programs.
inline std::vector<Index> blueprints() {
  std::vector<Index> out = corpus_indices();
  out.push_back(encode(lib::factorial_blueprint()));
  out.push_back(constant_blueprint(42));
  out.push_back(quine_blueprint());
  ProgramGen gen(41);
  while (out.size() < 30) out.push_back(encode(gen.program()));
  return out;
}

inline std::vector<Index> total_transformers() {
  return {encode(lib::identity_transformer()), encode(lib::constant_transformer(Nat(1))),
          encode(lib::constant_transformer(encode(lib::successor()))), encode(lib::constant_transformer(Nat(0))),
          encode(lib::factorial_step_transformer())};
}

}  // namespace testing
