// wbench: command-line front end for the workbench.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wb/evaluator.hpp"
#include "wb/functionals.hpp"
#include "wb/futamura.hpp"
#include "wb/library.hpp"
#include "wb/recursion.hpp"
#include "wb/specializer.hpp"
#include "wb/syntax.hpp"

namespace fs = std::filesystem;
using namespace wb;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// A program argument is a decimal index, `corpus:<name>`, `@<file>` holding
// an index constant, or a program source file.
Index load_index(const std::string& spec) {
  if (all_digits(spec)) return Nat::from_decimal(spec);
  if (spec.rfind("corpus:", 0) == 0) {
    try {
      return encode(lib::corpus_program(spec.substr(7)));
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
  }
  if (!spec.empty() && spec[0] == '@') return parse_constant(read_file(spec.substr(1)));
  return encode(parse_program(read_file(spec)));
}

OracleProgram load_oracle_program(const std::string& path) { return parse_oracle_program(read_file(path)); }

Nat parse_nat(const std::string& text) {
  try {
    return parse_constant(text);
  } catch (const std::exception&) {
    throw UsageError("not a natural number: '" + text + "'");
  }
}

// "0..9", "1,4,7" or a mix such as "0..3,10".
std::vector<Nat> parse_inputs(const std::string& text) {
  std::vector<Nat> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_nat(part));
      continue;
    }
    std::string lo = part.substr(0, dots);
    std::string hi = part.substr(dots + 2);
    if (!all_digits(lo) || !all_digits(hi)) throw UsageError("bad input range '" + part + "'");
    for (std::uint64_t i = std::stoull(lo), n = std::stoull(hi); i <= n; ++i) out.emplace_back(i);
  }
  if (out.empty()) throw UsageError("empty input set");
  return out;
}

std::string show_index(const Nat& n) {
  if (auto d = n.to_decimal(4096)) return *d;
  return n.describe();
}

void save_index(const std::string& path, const Nat& n) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << print_constant(n) << '\n';
}

void print_outcomes(const Index& p, const std::vector<Nat>& inputs, Fuel fuel) {
  for (const Nat& x : inputs) std::cout << x.describe() << ": " << run(p, x, fuel).to_string() << '\n';
}

std::string describe_stmt(const Stmt& s) {
  std::string text = print_block(Block{s});
  if (s.op == Op::kWhile) return "while " + text.substr(6, text.find('{') - 6) + "test";
  if (s.op == Op::kIfZero) return text.substr(0, text.find('{')) + "test";
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wbench: a reflective computability workbench"};
  app.require_subcommand(1);

  std::uint64_t fuel_budget = 1000000;
  std::string inputs_text = "0..9";
  std::string save_path;
  auto add_fuel = [&](CLI::App* cmd) {
    cmd->add_option("--fuel", fuel_budget, "statement budget")->check(CLI::PositiveNumber);
  };
  auto add_inputs = [&](CLI::App* cmd) { cmd->add_option("--inputs", inputs_text, "sample inputs, e.g. 0..9 or 1,3"); };
  auto add_save = [&](CLI::App* cmd) { cmd->add_option("--save", save_path, "write the resulting index to a file"); };

  std::string prog_a;
  std::string prog_b;
  std::string value_text;

  auto* run_cmd = app.add_subcommand("run", "run a program on one input");
  bool trace = false;
  run_cmd->add_option("program", prog_a)->required();
  run_cmd->add_option("input", value_text)->required();
  run_cmd->add_flag("--trace", trace, "print one line per executed statement");
  add_fuel(run_cmd);

  auto* encode_cmd = app.add_subcommand("encode", "print the index of a program file");
  encode_cmd->add_option("program", prog_a)->required();
  add_save(encode_cmd);

  auto* decode_cmd = app.add_subcommand("decode", "pretty-print the program with a given index");
  decode_cmd->add_option("index", prog_a)->required();

  auto* smn_cmd = app.add_subcommand("smn", "specialize a program on its first argument");
  bool opt = false;
  smn_cmd->add_option("program", prog_a)->required();
  smn_cmd->add_option("x", value_text)->required();
  smn_cmd->add_flag("--opt", opt, "use the optimizing specializer");
  add_save(smn_cmd);

  auto* fix_cmd = app.add_subcommand("fix", "fixed points of the recursion theorems");
  fix_cmd->require_subcommand(1);
  bool verify = false;
  auto* fix_kleene = fix_cmd->add_subcommand("kleene", "e with phi_e(y) ~ phi_p(e, y)");
  fix_kleene->add_option("blueprint", prog_a)->required();
  fix_kleene->add_flag("--verify", verify, "check the law on the sample inputs");
  auto* fix_rogers = fix_cmd->add_subcommand("rogers", "e with phi_e ~ phi_{f(e)}");
  fix_rogers->add_option("transformer", prog_a)->required();
  for (auto* c : {fix_kleene, fix_rogers}) {
    add_fuel(c);
    add_inputs(c);
    add_save(c);
  }

  auto* lfp_cmd = app.add_subcommand("lfp", "least fixed point of an operation");
  std::string via = "dovetail";
  lfp_cmd->add_option("operation", prog_a, "transformer (dovetail, stdform) or oracle program file (oracle)")
      ->required();
  lfp_cmd->add_option("--via", via)->check(CLI::IsMember({"dovetail", "stdform", "oracle"}));
  add_fuel(lfp_cmd);
  add_inputs(lfp_cmd);
  add_save(lfp_cmd);

  auto* ce_cmd = app.add_subcommand("counterexample", "the non-minimal recursion-theorem fixed point");
  add_fuel(ce_cmd);
  add_inputs(ce_cmd);

  auto* sasso_cmd = app.add_subcommand("sasso", "dovetailed vs sequential oracle access");
  std::string sasso_x = "3";
  sasso_cmd->add_option("--x", sasso_x);
  add_fuel(sasso_cmd);

  auto* compact_cmd = app.add_subcommand("compactness", "finite witness for an effective operation");
  std::string compact_x;
  std::uint64_t rounds = 100000;
  std::uint64_t max_arg = 6;
  std::size_t max_candidates = 200;
  compact_cmd->add_option("transformer", prog_a)->required();
  compact_cmd->add_option("function", prog_b)->required();
  compact_cmd->add_option("x", compact_x)->required();
  compact_cmd->add_option("--rounds", rounds);
  compact_cmd->add_option("--max-arg", max_arg);
  compact_cmd->add_option("--candidates", max_candidates);
  add_fuel(compact_cmd);

  auto* futamura_cmd = app.add_subcommand("futamura", "the three Futamura projections");
  futamura_cmd->add_option("source", prog_a)->required();
  add_fuel(futamura_cmd);
  add_inputs(futamura_cmd);

  auto* equiv_cmd = app.add_subcommand("check-equiv", "compare two programs on sample inputs");
  equiv_cmd->add_option("a", prog_a)->required();
  equiv_cmd->add_option("b", prog_b)->required();
  add_fuel(equiv_cmd);
  add_inputs(equiv_cmd);

  auto* corpus_cmd = app.add_subcommand("corpus-test", "load and check every program in a corpus directory");
  std::string corpus_dir = "corpus";
  corpus_cmd->add_option("--corpus", corpus_dir);
  add_fuel(corpus_cmd);
  add_inputs(corpus_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    const Fuel fuel{fuel_budget};

    if (run_cmd->parsed()) {
      Index p = load_index(prog_a);
      RunOptions options;
      options.fuel = fuel;
      if (trace) {
        options.trace = [](const TraceEvent& ev) {
          std::cout << "step " << ev.step << " depth " << ev.frame_depth << ": " << describe_stmt(*ev.stmt) << '\n';
        };
      }
      Outcome o = run(p, parse_nat(value_text), options);
      std::cout << o.to_string() << '\n';
      return kPass;
    }

    if (encode_cmd->parsed()) {
      Index p = load_index(prog_a);
      std::cout << show_index(p) << '\n';
      save_index(save_path, p);
      return kPass;
    }

    if (decode_cmd->parsed()) {
      std::cout << print_program(decode(load_index(prog_a)));
      return kPass;
    }

    if (smn_cmd->parsed()) {
      Index p = load_index(prog_a);
      Nat x = parse_nat(value_text);
      Index r = opt ? smn_opt(p, x) : smn(p, x);
      std::cout << show_index(r) << '\n' << print_program(decode(r));
      save_index(save_path, r);
      return kPass;
    }

    if (fix_kleene->parsed()) {
      Index p = load_index(prog_a);
      Index e = kleene_fix(p);
      std::cout << "fixed point " << show_index(e) << '\n';
      save_index(save_path, e);
      if (!verify) return kPass;
      bool ok = true;
      for (const Nat& y : parse_inputs(inputs_text)) {
        Outcome lhs = run(e, y, fuel);
        Outcome rhs = run(p, Nat::pair(e, y), fuel);
        Verdict v = compare_outcomes(lhs, rhs);
        ok = ok && v != Verdict::kDisagree;
        std::cout << (v == Verdict::kAgree ? "AGREE " : v == Verdict::kBothExhausted ? "BOTH-EXHAUSTED " : "DISAGREE ")
                  << y.describe() << ' ' << lhs.to_string() << '\n';
      }
      return ok ? kPass : kFail;
    }

    if (fix_rogers->parsed()) {
      RogersResult r = rogers_fix_checked(load_index(prog_a), parse_inputs(inputs_text), fuel);
      save_index(save_path, r.e);
      std::cout << r.to_string();
      return r.verdict == RogersResult::kNotFixed ? kFail : kPass;
    }

    if (lfp_cmd->parsed()) {
      Index l;
      if (via == "oracle")
        l = odifreddi_lfp(load_oracle_program(prog_a));
      else if (via == "stdform")
        l = lfp_via_stdform(load_index(prog_a));
      else
        l = frt_lfp(load_index(prog_a));
      std::cout << "lfp " << show_index(l) << '\n';
      save_index(save_path, l);
      print_outcomes(l, parse_inputs(inputs_text), fuel);
      return kPass;
    }

    if (ce_cmd->parsed()) {
      CounterexampleReport r = nonminimal_counterexample(parse_inputs(inputs_text), fuel);
      std::cout << r.to_string();
      return r.separated() ? kPass : kFail;
    }

    if (sasso_cmd->parsed()) {
      SassoReport r = sasso_demo(parse_nat(sasso_x), fuel);
      std::cout << r.to_string();
      return r.separated() ? kPass : kFail;
    }

    if (compact_cmd->parsed()) {
      CompactnessReport r = compactness_probe(load_index(prog_a), load_index(prog_b), parse_nat(compact_x), fuel,
                                              rounds, max_arg, max_candidates);
      std::cout << r.to_string();
      return r.status == CompactnessReport::kFound ? kPass : kFail;
    }

    if (futamura_cmd->parsed()) {
      std::vector<Index> sources;
      for (const auto& np : lib::corpus()) sources.push_back(encode(np.program));
      ProjectionReport r = project(load_index(prog_a), sources, parse_inputs(inputs_text), fuel);
      std::cout << r.to_string();
      return r.pass() ? kPass : kFail;
    }

    if (equiv_cmd->parsed()) {
      EquivReport r = check_equiv(load_index(prog_a), load_index(prog_b), parse_inputs(inputs_text), fuel);
      std::cout << r.to_string();
      return r.pass() ? kPass : kFail;
    }

    if (corpus_cmd->parsed()) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(corpus_dir))
        if (entry.path().extension() == ".wl") files.push_back(entry.path());
      if (files.empty()) throw UsageError("no .wl files in '" + corpus_dir + "'");
      std::sort(files.begin(), files.end());
      const auto inputs = parse_inputs(inputs_text);
      bool ok = true;
      for (const auto& path : files) {
        Program p = parse_program(read_file(path.string()));
        Index i = encode(p);
        bool round_trip = decode(i) == p && parse_program(print_program(p)) == p;
        bool universal = true;
        for (const Nat& x : inputs) {
          Verdict v = compare_outcomes(run(universal_index(), Nat::pair(i, x), fuel), run(i, x, fuel));
          universal = universal && v != Verdict::kDisagree;
        }
        bool matches = true;
        try {
          matches = encode(lib::corpus_program(path.stem().string())) == i;
        } catch (const std::out_of_range&) {
        }
        bool pass = round_trip && universal && matches;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << path.filename().string() << " index=" << show_index(i)
                  << (round_trip ? "" : " round-trip") << (universal ? "" : " universal")
                  << (matches ? "" : " library-mismatch") << '\n';
      }
      return ok ? kPass : kFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const LanguageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
