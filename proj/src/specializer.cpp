#include "wb/specializer.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace wb {

namespace {

Nat stmt_code(Op op, const Nat& payload) { return Nat::pair(Nat(static_cast<std::uint64_t>(op)), payload); }

Stmt make(Op op, const Nat& dst, const Nat& a = Nat(), const Nat& b = Nat(), const Nat& c = Nat()) {
  Stmt s;
  s.op = op;
  s.dst = dst;
  s.a = a;
  s.b = b;
  s.c = c;
  return s;
}

Stmt make_const(const Nat& dst, const Nat& v) {
  Stmt s;
  s.op = Op::kConst;
  s.dst = dst;
  s.value = v;
  return s;
}

// Abstract values for the optimizing specializer. `kInput` is the residual
// program's own input; `kDyn` means "only the residual register knows".
struct AVal;
using AValPtr = std::shared_ptr<const AVal>;

struct AVal {
  enum Kind { kConst, kInput, kPair, kDyn } kind = kConst;
  Nat value;
  AValPtr left;
  AValPtr right;
};

AValPtr a_const(const Nat& n) { return std::make_shared<AVal>(AVal{AVal::kConst, n, nullptr, nullptr}); }
AValPtr a_input() { return std::make_shared<AVal>(AVal{AVal::kInput, Nat(), nullptr, nullptr}); }
AValPtr a_dyn() { return std::make_shared<AVal>(AVal{AVal::kDyn, Nat(), nullptr, nullptr}); }

AValPtr a_pair(AValPtr l, AValPtr r) {
  if (l->kind == AVal::kConst && r->kind == AVal::kConst) return a_const(Nat::pair(l->value, r->value));
  return std::make_shared<AVal>(AVal{AVal::kPair, Nat(), std::move(l), std::move(r)});
}

bool is_static(const AValPtr& v) { return v->kind != AVal::kDyn; }

bool mentions_input(const AValPtr& v) {
  switch (v->kind) {
    case AVal::kInput: return true;
    case AVal::kPair: return mentions_input(v->left) || mentions_input(v->right);
    default: return false;
  }
}

// 1 known nonzero, 0 known zero, -1 unknown.
int known_zero(const AValPtr& v) {
  switch (v->kind) {
    case AVal::kConst: return v->value.is_zero() ? 0 : 1;
    case AVal::kPair: return (known_zero(v->left) == 1 || known_zero(v->right) == 1) ? 1 : -1;
    default: return -1;
  }
}

void collect_regs(const Block& b, std::vector<Nat>& mentioned, std::vector<Nat>& written) {
  auto add = [](std::vector<Nat>& v, const Nat& r) {
    if (std::find(v.begin(), v.end(), r) == v.end()) v.push_back(r);
  };
  for (const Stmt& s : b) {
    switch (s.op) {
      case Op::kNop: break;
      case Op::kWhile:
        add(mentioned, s.dst);
        collect_regs(s.body, mentioned, written);
        break;
      case Op::kIfZero:
        add(mentioned, s.dst);
        collect_regs(s.body, mentioned, written);
        collect_regs(s.alt, mentioned, written);
        break;
      case Op::kConst:
        add(mentioned, s.dst);
        add(written, s.dst);
        break;
      case Op::kPair:
      case Op::kEval:
      case Op::kSmn:
        add(mentioned, s.a);
        add(mentioned, s.b);
        add(mentioned, s.dst);
        add(written, s.dst);
        break;
      case Op::kBEval:
        add(mentioned, s.a);
        add(mentioned, s.b);
        add(mentioned, s.c);
        add(mentioned, s.dst);
        add(written, s.dst);
        break;
      default:
        add(mentioned, s.a);
        add(mentioned, s.dst);
        add(written, s.dst);
        break;
    }
  }
}

class PartialEvaluator {
 public:
  PartialEvaluator(const Program& p, const Nat& x) : next_free_(max_register(p.body).succ()) {
    regs_[Nat()] = Entry{a_pair(a_const(x), a_input()), false};
    input_locs_.push_back(Nat());
  }

  Block run(const Block& body) {
    Block out;
    block(body, out);
    Entry& e = entry(Nat());
    if (!e.materialized && !(e.val->kind == AVal::kInput && is_loc(Nat()))) materialize_into(Nat(), e.val, out);
    return out;
  }

 private:
  struct Entry {
    AValPtr val;
    bool materialized;  // the residual register holds `val`
  };

  Entry& entry(const Nat& r) {
    auto it = regs_.find(r);
    if (it == regs_.end()) it = regs_.emplace(r, Entry{a_const(Nat()), true}).first;
    return it->second;
  }

  Nat fresh() {
    Nat r = next_free_;
    next_free_ = next_free_.succ();
    return r;
  }

  bool is_loc(const Nat& r) const { return std::find(input_locs_.begin(), input_locs_.end(), r) != input_locs_.end(); }

  bool input_needed() const {
    return std::any_of(regs_.begin(), regs_.end(), [](const auto& kv) { return mentions_input(kv.second.val); });
  }

  // Called before the residual program overwrites register r.
  void clobber(const Nat& r, Block& out) {
    if (!is_loc(r)) return;
    if (input_locs_.size() == 1 && input_needed()) {
      Nat save = fresh();
      out.push_back(make(Op::kCopy, save, r));
      input_locs_.push_back(save);
    }
    input_locs_.erase(std::find(input_locs_.begin(), input_locs_.end(), r));
  }

  // A register holding the static value v, built into temporaries if needed.
  Nat build(const AValPtr& v, Block& out) {
    switch (v->kind) {
      case AVal::kInput: return input_locs_.front();
      case AVal::kConst: {
        Nat t = fresh();
        out.push_back(make_const(t, v->value));
        return t;
      }
      case AVal::kPair: {
        Nat l = build(v->left, out);
        Nat r = build(v->right, out);
        Nat t = fresh();
        out.push_back(make(Op::kPair, t, l, r));
        return t;
      }
      case AVal::kDyn: break;
    }
    throw std::logic_error("dynamic value has no static form");
  }

  void materialize_into(const Nat& r, const AValPtr& v, Block& out) {
    switch (v->kind) {
      case AVal::kConst:
        clobber(r, out);
        out.push_back(make_const(r, v->value));
        break;
      case AVal::kInput:
        if (!is_loc(r)) {
          out.push_back(make(Op::kCopy, r, input_locs_.front()));
          input_locs_.push_back(r);
        }
        break;
      case AVal::kPair: {
        Nat a = build(v->left, out);
        Nat b = build(v->right, out);
        clobber(r, out);
        out.push_back(make(Op::kPair, r, a, b));
        break;
      }
      case AVal::kDyn:
        break;
    }
    entry(r).materialized = true;
  }

  // Register to read for the current value of r in the residual program.
  Nat operand(const Nat& r, Block& out) {
    Entry& e = entry(r);
    if (e.materialized) return r;
    if (e.val->kind == AVal::kInput) return is_loc(r) ? r : input_locs_.front();
    AValPtr v = e.val;
    materialize_into(r, v, out);
    return r;
  }

  void set_static(const Nat& d, AValPtr v) {
    Entry& e = entry(d);
    bool mat = v->kind == AVal::kInput && is_loc(d);
    e = Entry{std::move(v), mat};
  }

  void emit_dynamic(Stmt s, Block& out) {
    clobber(s.dst, out);
    entry(s.dst) = Entry{a_dyn(), true};
    out.push_back(std::move(s));
  }

  void unary(const Stmt& s, Block& out) {
    AValPtr v = entry(s.a).val;
    if (v->kind == AVal::kConst) {
      switch (s.op) {
        case Op::kSucc: return set_static(s.dst, a_const(v->value.succ()));
        case Op::kPred: return set_static(s.dst, a_const(v->value.pred()));
        case Op::kFirst: return set_static(s.dst, a_const(v->value.first()));
        case Op::kSecond: return set_static(s.dst, a_const(v->value.second()));
        case Op::kCopy: return set_static(s.dst, v);
        default: break;
      }
    }
    if (v->kind == AVal::kPair && s.op == Op::kFirst) return set_static(s.dst, v->left);
    if (v->kind == AVal::kPair && s.op == Op::kSecond) return set_static(s.dst, v->right);
    if (v->kind != AVal::kDyn && s.op == Op::kCopy) return set_static(s.dst, v);
    Nat a = operand(s.a, out);
    emit_dynamic(make(s.op, s.dst, a), out);
  }

  // Loops and branches on unknown guards are copied verbatim once every
  // register they touch holds its real value.
  void opaque(const Stmt& s, Block& out) {
    std::vector<Nat> mentioned;
    std::vector<Nat> written;
    collect_regs(Block{s}, mentioned, written);
    for (const Nat& r : mentioned) {
      Entry& e = entry(r);
      if (e.materialized) continue;
      if (e.val->kind == AVal::kInput && is_loc(r)) {
        e.materialized = true;
        continue;
      }
      AValPtr v = e.val;
      materialize_into(r, v, out);
    }
    for (const Nat& r : written) entry(r) = Entry{a_dyn(), true};
    for (const Nat& r : written) clobber(r, out);
    out.push_back(s);
  }

  void block(const Block& b, Block& out) {
    for (const Stmt& s : b) stmt(s, out);
  }

  void stmt(const Stmt& s, Block& out) {
    switch (s.op) {
      case Op::kNop:
        break;
      case Op::kConst:
        set_static(s.dst, a_const(s.value));
        break;
      case Op::kCopy:
      case Op::kSucc:
      case Op::kPred:
      case Op::kFirst:
      case Op::kSecond:
        unary(s, out);
        break;
      case Op::kPair: {
        AValPtr l = entry(s.a).val;
        AValPtr r = entry(s.b).val;
        if (is_static(l) && is_static(r)) {
          set_static(s.dst, a_pair(l, r));
        } else {
          Nat a = operand(s.a, out);
          Nat b = operand(s.b, out);
          emit_dynamic(make(Op::kPair, s.dst, a, b), out);
        }
        break;
      }
      case Op::kSmn: {
        AValPtr l = entry(s.a).val;
        AValPtr r = entry(s.b).val;
        if (l->kind == AVal::kConst && r->kind == AVal::kConst) {
          set_static(s.dst, a_const(smn(l->value, r->value)));
        } else {
          Nat a = operand(s.a, out);
          Nat b = operand(s.b, out);
          emit_dynamic(make(Op::kSmn, s.dst, a, b), out);
        }
        break;
      }
      case Op::kEval: {
        Nat a = operand(s.a, out);
        Nat b = operand(s.b, out);
        emit_dynamic(make(Op::kEval, s.dst, a, b), out);
        break;
      }
      case Op::kBEval: {
        Nat a = operand(s.a, out);
        Nat b = operand(s.b, out);
        Nat c = operand(s.c, out);
        emit_dynamic(make(Op::kBEval, s.dst, a, b, c), out);
        break;
      }
      case Op::kQuery: {
        Nat a = operand(s.a, out);
        emit_dynamic(make(Op::kQuery, s.dst, a), out);
        break;
      }
      case Op::kWhile:
        if (known_zero(entry(s.dst).val) == 0) break;
        opaque(s, out);
        break;
      case Op::kIfZero:
        switch (known_zero(entry(s.dst).val)) {
          case 0: block(s.body, out); break;
          case 1: block(s.alt, out); break;
          default: opaque(s, out); break;
        }
        break;
    }
  }

  Nat next_free_;
  std::unordered_map<Nat, Entry, NatHash> regs_;
  std::vector<Nat> input_locs_;
};

using Live = std::unordered_set<Nat, NatHash>;

bool is_total(Op op) {
  switch (op) {
    case Op::kConst:
    case Op::kCopy:
    case Op::kSucc:
    case Op::kPred:
    case Op::kPair:
    case Op::kFirst:
    case Op::kSecond:
    case Op::kSmn:
    case Op::kNop:
      return true;
    default:
      return false;
  }
}

// Backward pass: on return `live` holds the registers live on entry.
Block drop_dead(const Block& b, Live& live) {
  std::vector<Stmt> kept;
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    const Stmt& s = *it;
    switch (s.op) {
      case Op::kNop:
        continue;
      case Op::kWhile: {
        Live at_head = live;
        at_head.insert(s.dst);
        for (;;) {
          Live body_in = at_head;
          drop_dead(s.body, body_in);
          std::size_t before = at_head.size();
          at_head.insert(body_in.begin(), body_in.end());
          if (at_head.size() == before) break;
        }
        Stmt w = s;
        Live body_live = at_head;
        w.body = drop_dead(s.body, body_live);
        live = std::move(at_head);
        kept.push_back(std::move(w));
        continue;
      }
      case Op::kIfZero: {
        Live then_live = live;
        Live else_live = live;
        Stmt c = s;
        c.body = drop_dead(s.body, then_live);
        c.alt = drop_dead(s.alt, else_live);
        live = std::move(then_live);
        live.insert(else_live.begin(), else_live.end());
        live.insert(s.dst);
        kept.push_back(std::move(c));
        continue;
      }
      default:
        break;
    }
    if (is_total(s.op) && !live.contains(s.dst)) continue;
    live.erase(s.dst);
    switch (s.op) {
      case Op::kConst: break;
      case Op::kPair:
      case Op::kEval:
      case Op::kSmn:
        live.insert(s.a);
        live.insert(s.b);
        break;
      case Op::kBEval:
        live.insert(s.a);
        live.insert(s.b);
        live.insert(s.c);
        break;
      default:
        live.insert(s.a);
        break;
    }
    kept.push_back(s);
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

}  // namespace

Index smn(const Index& p, const Nat& x) {
  Nat s4 = stmt_code(Op::kEval, Nat::pair(Nat(0), Nat::pair(Nat(3), Nat(2))));
  Nat s3 = stmt_code(Op::kConst, Nat::pair(Nat(3), p));
  Nat s2 = stmt_code(Op::kPair, Nat::pair(Nat(2), Nat::pair(Nat(1), Nat(0))));
  Nat s1 = stmt_code(Op::kConst, Nat::pair(Nat(1), x));
  return cons_nat(s1, cons_nat(s2, cons_nat(s3, cons_nat(s4, Nat()))));
}

Index smn_opt(const Index& p, const Nat& x) {
  Program prog = decode(p);
  Block residual = PartialEvaluator(prog, x).run(prog.body);
  Live live{Nat()};
  return encode(Program{drop_dead(residual, live)});
}

Index subst_const(const Template& t, const Nat& k) { return smn(encode(t.program), k); }

const ProbeLine* ProbeReport::witness() const {
  for (const auto& l : lines)
    if (l.kind == ProbeLine::kViolation) return &l;
  return nullptr;
}

std::size_t ProbeReport::count(ProbeLine::Kind k) const {
  return static_cast<std::size_t>(std::count_if(lines.begin(), lines.end(), [k](const auto& l) { return l.kind == k; }));
}

std::string ProbeReport::to_string() const {
  std::ostringstream os;
  for (const auto& l : lines) {
    os << (l.kind == ProbeLine::kNotEquivalent ? "SKIP"
           : l.kind == ProbeLine::kConsistent  ? "CONSISTENT"
           : l.kind == ProbeLine::kViolation   ? "VIOLATION"
                                               : "INDETERMINATE")
       << ' ' << l.a.describe() << ' ' << l.b.describe();
    if (l.fa && l.fb) os << " -> " << l.fa->describe() << ' ' << l.fb->describe();
    os << '\n';
  }
  os << (witness() ? "NON-EXTENSIONAL (witness found)\n" : "NO VIOLATION FOUND (not a proof of extensionality)\n");
  return os.str();
}

ProbeReport extensionality_probe(const Index& f, const std::vector<std::pair<Index, Index>>& pairs,
                                 const std::vector<Nat>& inputs, Fuel fuel) {
  ProbeReport report;
  for (const auto& [a, b] : pairs) {
    ProbeLine line{a, b, ProbeLine::kNotEquivalent, std::nullopt, std::nullopt};
    if (check_equiv(a, b, inputs, fuel).pass()) {
      Outcome fa = run(f, a, fuel);
      Outcome fb = run(f, b, fuel);
      if (fa.is_exhausted() || fb.is_exhausted()) {
        line.kind = ProbeLine::kIndeterminate;
      } else {
        line.fa = fa.value();
        line.fb = fb.value();
        line.kind = check_equiv(fa.value(), fb.value(), inputs, fuel).pass() ? ProbeLine::kConsistent
                                                                              : ProbeLine::kViolation;
      }
    }
    report.lines.push_back(std::move(line));
  }
  return report;
}

}  // namespace wb
