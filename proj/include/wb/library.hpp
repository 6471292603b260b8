#pragma once

#include <string>
#include <vector>

#include "wb/objlang.hpp"

// Small programs used throughout: the named corpus and a few building blocks.
namespace wb::lib {

Program identity();
Program successor();
/// pair(a, b) -> a + b.
Program add();
/// pair(a, b) -> a * b.
Program mul();
/// n -> n!, with a loop.
Program factorial();
/// [X1 := succ X1; while X1 {}], the canonical nowhere-defined program.
Program diverge();
/// [X0 := 0]. Its index, 1, is the constant-zero code t.
Program constant_zero();
/// x -> x + 1 if x is even, else x - 1 (on codes: not extensional).
Program parity_transformer();
/// pair(c, y) -> 1 if y = 0 else y * phi_c(y - 1).
Program factorial_step_template();
/// c -> smn(factorial_step_template, c).
Program factorial_step_transformer();
/// c -> c.
Program identity_transformer();
/// pair(self, y) -> 1 if y = 0 else y * phi_U(self, y - 1).
Program factorial_blueprint();
/// Oracle program: 1 if y = 0 else y * query(y - 1).
OracleProgram factorial_oracle();

/// A transformer that ignores its argument and returns `code`.
Program constant_transformer(const Index& code);

struct NamedProgram {
  std::string name;
  Program program;
};

/// The named corpus, in a fixed order.
const std::vector<NamedProgram>& corpus();
/// Throws std::out_of_range for unknown names.
const Program& corpus_program(const std::string& name);

}  // namespace wb::lib
