#include "wb/evaluator.hpp"

#include "wb/specializer.hpp"

#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace wb {

namespace {

constexpr std::uint64_t kNoDeadline = std::numeric_limits<std::uint64_t>::max();

struct CStmt {
  Op op;
  std::uint32_t dst = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t c = 0;
  std::uint32_t body = 0;
  std::uint32_t alt = 0;
  Nat value;
  const Stmt* source = nullptr;
};

/// A decoded program with registers renumbered to dense slots (X0 -> 0).
struct Compiled {
  Program source;
  std::vector<std::vector<CStmt>> blocks;  // blocks[0] is the top level
  std::uint32_t slots = 1;
};

class Compiler {
 public:
  explicit Compiler(Compiled& out) : out_(out) { slot_of_.emplace(Nat(), 0); }

  std::uint32_t block(const Block& b) {
    auto id = static_cast<std::uint32_t>(out_.blocks.size());
    out_.blocks.emplace_back();
    std::vector<CStmt> stmts;
    stmts.reserve(b.size());
    for (const Stmt& s : b) stmts.push_back(stmt(s));
    out_.blocks[id] = std::move(stmts);
    return id;
  }

 private:
  std::uint32_t slot(const Nat& r) {
    auto [it, inserted] = slot_of_.emplace(r, out_.slots);
    if (inserted) ++out_.slots;
    return it->second;
  }

  CStmt stmt(const Stmt& s) {
    CStmt c;
    c.op = s.op;
    c.source = &s;
    switch (s.op) {
      case Op::kNop:
        break;
      case Op::kConst:
        c.dst = slot(s.dst);
        c.value = s.value;
        break;
      case Op::kWhile:
        c.dst = slot(s.dst);
        c.body = block(s.body);
        break;
      case Op::kIfZero:
        c.dst = slot(s.dst);
        c.body = block(s.body);
        c.alt = block(s.alt);
        break;
      case Op::kBEval:
        c.dst = slot(s.dst);
        c.a = slot(s.a);
        c.b = slot(s.b);
        c.c = slot(s.c);
        break;
      case Op::kPair:
      case Op::kEval:
      case Op::kSmn:
        c.dst = slot(s.dst);
        c.a = slot(s.a);
        c.b = slot(s.b);
        break;
      default:
        c.dst = slot(s.dst);
        c.a = slot(s.a);
        break;
    }
    return c;
  }

  Compiled& out_;
  std::unordered_map<Nat, std::uint32_t, NatHash> slot_of_;
};

class ProgramCache {
 public:
  static ProgramCache& instance() {
    static ProgramCache cache;
    return cache;
  }

  std::shared_ptr<const Compiled> get(const Index& code) {
    {
      std::lock_guard lock(mu_);
      if (auto it = map_.find(code); it != map_.end()) return it->second;
    }
    auto compiled = std::make_shared<Compiled>();
    compiled->source = decode(code);
    Compiler(*compiled).block(compiled->source.body);
    std::lock_guard lock(mu_);
    auto [it, inserted] = map_.emplace(code, std::move(compiled));
    return it->second;
  }

  void clear() {
    std::lock_guard lock(mu_);
    map_.clear();
  }

 private:
  std::mutex mu_;
  std::unordered_map<Nat, std::shared_ptr<const Compiled>, NatHash> map_;
};

enum class FrameKind : std::uint8_t { kRoot, kEval, kBEval };

struct Cursor {
  std::uint32_t block;
  std::uint32_t pc;
};

struct Frame {
  std::shared_ptr<const Compiled> prog;
  std::vector<Nat> regs;
  std::vector<Cursor> cursors;
  std::uint64_t deadline = kNoDeadline;
  std::uint64_t own_deadline = kNoDeadline;
  std::uint32_t ret_slot = 0;
  FrameKind kind = FrameKind::kRoot;
  bool has_oracle = false;
};

class Machine {
 public:
  Machine(const RunOptions& options, const Oracle* oracle) : options_(options), oracle_(oracle) {}

  Outcome run(const Index& p, const Nat& input) {
    push(ProgramCache::instance().get(p), input, FrameKind::kRoot, 0, options_.fuel.budget, kNoDeadline);
    frames_[0].has_oracle = oracle_ != nullptr;
    for (;;) {
      Frame& f = frames_[depth_ - 1];
      Cursor& cur = f.cursors.back();
      const auto& block = f.prog->blocks[cur.block];

      if (cur.pc >= block.size()) {
        if (f.cursors.size() > 1) {
          f.cursors.pop_back();
          Cursor& parent = f.cursors.back();
          if (f.prog->blocks[parent.block][parent.pc].op == Op::kIfZero) ++parent.pc;
          continue;
        }
        // Halting costs nothing.
        Nat v = f.regs[0];
        if (depth_ == 1) return Outcome::halted(v, used_);
        FrameKind kind = f.kind;
        std::uint32_t ret = f.ret_slot;
        --depth_;
        Frame& parent = frames_[depth_ - 1];
        parent.regs[ret] = kind == FrameKind::kBEval ? Nat::pair(Nat(1), v) : v;
        ++parent.cursors.back().pc;
        continue;
      }

      if (used_ >= f.deadline) {
        if (!unwind_deadline()) return Outcome::exhausted(options_.fuel.budget);
        continue;
      }
      ++used_;
      const CStmt& s = block[cur.pc];
      if (options_.trace) options_.trace(TraceEvent{depth_, used_, s.source});
      auto& r = f.regs;

      switch (s.op) {
        case Op::kNop:
          ++cur.pc;
          break;
        case Op::kConst:
          r[s.dst] = s.value;
          ++cur.pc;
          break;
        case Op::kCopy:
          r[s.dst] = r[s.a];
          ++cur.pc;
          break;
        case Op::kSucc:
          r[s.dst] = r[s.a].succ();
          ++cur.pc;
          break;
        case Op::kPred:
          r[s.dst] = r[s.a].pred();
          ++cur.pc;
          break;
        case Op::kPair:
          r[s.dst] = Nat::pair(r[s.a], r[s.b]);
          ++cur.pc;
          break;
        case Op::kFirst:
          r[s.dst] = r[s.a].first();
          ++cur.pc;
          break;
        case Op::kSecond:
          r[s.dst] = r[s.a].second();
          ++cur.pc;
          break;
        case Op::kSmn:
          r[s.dst] = smn(r[s.a], r[s.b]);
          ++cur.pc;
          break;
        case Op::kWhile:
          if (r[s.dst].is_zero()) {
            ++cur.pc;
          } else {
            f.cursors.push_back(Cursor{s.body, 0});
          }
          break;
        case Op::kIfZero:
          f.cursors.push_back(Cursor{r[s.dst].is_zero() ? s.body : s.alt, 0});
          break;
        case Op::kEval: {
          Nat code = r[s.a];
          Nat arg = r[s.b];
          std::uint64_t deadline = f.deadline;
          push(ProgramCache::instance().get(code), arg, FrameKind::kEval, s.dst, deadline, kNoDeadline);
          break;
        }
        case Op::kBEval: {
          Nat code = r[s.a];
          Nat arg = r[s.b];
          const Nat& budget = r[s.c];
          std::uint64_t own = kNoDeadline;
          if (budget.is_small() && budget.small() < kNoDeadline - used_) own = used_ + budget.small();
          std::uint64_t deadline = std::min(own, f.deadline);
          push(ProgramCache::instance().get(code), arg, FrameKind::kBEval, s.dst, deadline, own);
          break;
        }
        case Op::kQuery:
          query(f, s);
          break;
      }
    }
  }

 private:
  void push(std::shared_ptr<const Compiled> prog, const Nat& input, FrameKind kind, std::uint32_t ret,
            std::uint64_t deadline, std::uint64_t own) {
    if (frames_.size() <= depth_) frames_.emplace_back();
    Frame& f = frames_[depth_++];
    f.regs.assign(prog->slots, Nat());
    f.regs[0] = input;
    f.cursors.clear();
    f.cursors.push_back(Cursor{0, 0});
    f.prog = std::move(prog);
    f.deadline = deadline;
    f.own_deadline = own;
    f.ret_slot = ret;
    f.kind = kind;
    f.has_oracle = false;
  }

  // The innermost frame hit its deadline. The beval frame whose own budget
  // produced that deadline answers pair(0, 0); if none did, the global fuel
  // is gone.
  bool unwind_deadline() {
    const std::uint64_t d = frames_[depth_ - 1].deadline;
    for (std::size_t i = depth_; i-- > 1;) {
      const Frame& g = frames_[i];
      if (g.kind == FrameKind::kBEval && g.own_deadline == d) {
        std::uint32_t ret = g.ret_slot;
        depth_ = i;
        Frame& parent = frames_[depth_ - 1];
        parent.regs[ret] = Nat::pair(Nat(), Nat());
        ++parent.cursors.back().pc;
        return true;
      }
    }
    return false;
  }

  void diverge(Frame& f) { used_ = std::max(used_, f.deadline); }

  void query(Frame& f, const CStmt& s) {
    if (!f.has_oracle || oracle_ == nullptr || std::holds_alternative<NoOracle>(*oracle_)) {
      diverge(f);
      return;
    }
    Nat arg = f.regs[s.a];
    if (const auto* table = std::get_if<FiniteFn>(oracle_)) {
      if (const Nat* v = table->lookup(arg)) {
        f.regs[s.dst] = *v;
        ++f.cursors.back().pc;
      } else {
        diverge(f);
      }
      return;
    }
    const Index& g = std::get<Index>(*oracle_);
    std::uint64_t deadline = f.deadline;
    push(ProgramCache::instance().get(g), arg, FrameKind::kEval, s.dst, deadline, kNoDeadline);
  }

  const RunOptions& options_;
  const Oracle* oracle_;
  std::vector<Frame> frames_;
  std::size_t depth_ = 0;
  std::uint64_t used_ = 0;
};

}  // namespace

std::string Outcome::to_string() const {
  std::ostringstream os;
  if (halted_)
    os << "HALT " << value_.describe() << " steps=" << steps_;
  else
    os << "EXHAUSTED fuel=" << budget_;
  return os.str();
}

Outcome run(const Index& p, const Nat& input, const RunOptions& options) {
  Machine m(options, nullptr);
  return m.run(p, input);
}

Outcome run(const Index& p, const Nat& input, Fuel fuel) {
  RunOptions options;
  options.fuel = fuel;
  return run(p, input, options);
}

Outcome run_program(const Program& p, const Nat& input, Fuel fuel) { return run(encode(p), input, fuel); }

Outcome run_with_oracle(const Index& p, const Oracle& oracle, const Nat& input, Fuel fuel) {
  RunOptions options;
  options.fuel = fuel;
  Machine m(options, &oracle);
  return m.run(p, input);
}

Index universal_index() {
  static const Index u = [] {
    auto s = [](Op op, std::uint64_t d, std::uint64_t a, std::uint64_t b = 0) {
      Stmt st;
      st.op = op;
      st.dst = Nat(d);
      st.a = Nat(a);
      st.b = Nat(b);
      return st;
    };
    return encode(Program{{s(Op::kFirst, 1, 0), s(Op::kSecond, 2, 0), s(Op::kEval, 0, 1, 2)}});
  }();
  return u;
}

Verdict compare_outcomes(const Outcome& a, const Outcome& b) {
  if (a.is_halted() && b.is_halted()) return a.value() == b.value() ? Verdict::kAgree : Verdict::kDisagree;
  if (a.is_exhausted() && b.is_exhausted()) return Verdict::kBothExhausted;
  return Verdict::kDisagree;
}

bool EquivReport::pass() const { return count(Verdict::kDisagree) == 0; }

std::size_t EquivReport::count(Verdict v) const {
  std::size_t n = 0;
  for (const auto& l : lines)
    if (l.verdict == v) ++n;
  return n;
}

std::string EquivReport::to_string() const {
  std::ostringstream os;
  for (const auto& l : lines) {
    switch (l.verdict) {
      case Verdict::kAgree:
        os << "AGREE " << l.input.describe() << ' ' << l.left.value().describe() << '\n';
        break;
      case Verdict::kBothExhausted:
        os << "BOTH-EXHAUSTED " << l.input.describe() << '\n';
        break;
      case Verdict::kDisagree:
        os << "DISAGREE " << l.input.describe() << " left=" << l.left.to_string()
           << " right=" << l.right.to_string() << '\n';
        break;
    }
  }
  if (count(Verdict::kBothExhausted) > 0)
    os << "NOTE both-exhausted lines are evidence up to the budget, not proof of equality\n";
  return os.str();
}

EquivReport check_equiv(const Index& a, const Index& b, const std::vector<Nat>& inputs, Fuel fuel) {
  EquivReport report;
  for (const Nat& x : inputs) {
    Outcome l = run(a, x, fuel);
    Outcome r = run(b, x, fuel);
    Verdict v = compare_outcomes(l, r);
    report.lines.push_back({x, v, std::move(l), std::move(r)});
  }
  return report;
}

void clear_program_cache() { ProgramCache::instance().clear(); }

}  // namespace wb
