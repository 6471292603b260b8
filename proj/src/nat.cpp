#include "wb/nat.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace wb {

namespace {

using u128 = unsigned __int128;

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

u128 isqrt128(u128 n) {
  if (n == 0) return 0;
  auto x = static_cast<u128>(std::sqrt(static_cast<long double>(n)));
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

std::pair<u128, u128> unpair128(u128 n) {
  u128 s = (isqrt128(8 * n + 1) - 1) / 2;
  u128 y = n - s * (s + 1) / 2;
  return {s - y, y};
}

double log2_of_sum(double a, double b) {
  double hi = std::max(a, b);
  double lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

}  // namespace

namespace detail {

struct Node {
  Nat first;
  Nat second;
  std::uint32_t depth;
  double log2;
  std::size_t hash;
  // Guarded by the store mutex.
  mutable std::optional<Nat> succ_memo;
  mutable std::optional<Nat> pred_memo;
};

}  // namespace detail

class NatStore {
 public:
  static NatStore& instance() {
    static NatStore store;
    return store;
  }

  std::mutex mu;

  Nat pair_l(const Nat& a, const Nat& b) {
    if (a.is_small() && b.is_small()) {
      u128 s = static_cast<u128>(a.lit_) + b.lit_;
      u128 v = s * (s + 1) / 2 + b.lit_;
      if (v < Nat::kLiteralBound) return Nat(static_cast<std::uint64_t>(v), nullptr);
    }
    Key key{a, b};
    if (auto it = table_.find(key); it != table_.end()) return Nat(0, it->second);
    const double la = a.log2_estimate();
    const double lb = b.log2_estimate();
    const double ls = log2_of_sum(la, lb);
    nodes_.push_back(detail::Node{
        a, b, std::max(a.depth(), b.depth()) + 1, std::max(2.0 * ls - 1.0, 62.0),
        static_cast<std::size_t>(mix64(a.hash() * 31 + mix64(b.hash() + 0x51ed27))), {}, {}});
    const detail::Node* node = &nodes_.back();
    table_.emplace(key, node);
    return Nat(0, node);
  }

  Nat from_u128_l(u128 v) {
    if (v < Nat::kLiteralBound) return Nat(static_cast<std::uint64_t>(v), nullptr);
    auto [x, y] = unpair128(v);
    return pair_l(from_u128_l(x), from_u128_l(y));
  }

  Nat succ_l(const Nat& n) {
    if (n.is_small()) return from_u128_l(static_cast<u128>(n.lit_) + 1);
    const detail::Node* node = n.node_;
    if (node->succ_memo) return *node->succ_memo;
    Nat r = !node->first.is_zero() ? pair_l(pred_l(node->first), succ_l(node->second))
                                   : pair_l(succ_l(node->second), Nat());
    node->succ_memo = r;
    return r;
  }

  Nat pred_l(const Nat& n) {
    if (n.is_small()) return Nat(n.lit_ == 0 ? 0 : n.lit_ - 1, nullptr);
    const detail::Node* node = n.node_;
    if (node->pred_memo) return *node->pred_memo;
    Nat r = !node->second.is_zero() ? pair_l(succ_l(node->first), pred_l(node->second))
                                    : pair_l(Nat(), pred_l(node->first));
    node->pred_memo = r;
    return r;
  }

  std::size_t size() {
    std::lock_guard lock(mu);
    return nodes_.size();
  }

 private:
  struct Key {
    Nat a, b;
    bool operator==(const Key& o) const { return a == o.a && b == o.b; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return mix64(k.a.hash() ^ (k.b.hash() * 0x100000001b3ULL)); }
  };

  std::deque<detail::Node> nodes_;
  std::unordered_map<Key, const detail::Node*, KeyHash> table_;
};

Nat Nat::pair(const Nat& x, const Nat& y) {
  if (x.is_small() && y.is_small()) {
    u128 s = static_cast<u128>(x.lit_) + y.lit_;
    u128 v = s * (s + 1) / 2 + y.lit_;
    if (v < kLiteralBound) return Nat(static_cast<std::uint64_t>(v), nullptr);
  }
  auto& store = NatStore::instance();
  std::lock_guard lock(store.mu);
  return store.pair_l(x, y);
}

std::pair<Nat, Nat> Nat::unpair() const {
  if (node_ != nullptr) return {node_->first, node_->second};
  auto [x, y] = unpair128(lit_);
  return {Nat(static_cast<std::uint64_t>(x), nullptr), Nat(static_cast<std::uint64_t>(y), nullptr)};
}

Nat Nat::first() const { return node_ != nullptr ? node_->first : unpair().first; }
Nat Nat::second() const { return node_ != nullptr ? node_->second : unpair().second; }

Nat Nat::succ() const {
  if (node_ == nullptr && lit_ + 1 < kLiteralBound) return Nat(lit_ + 1, nullptr);
  auto& store = NatStore::instance();
  std::lock_guard lock(store.mu);
  return store.succ_l(*this);
}

Nat Nat::pred() const {
  if (node_ == nullptr) return Nat(lit_ == 0 ? 0 : lit_ - 1, nullptr);
  auto& store = NatStore::instance();
  std::lock_guard lock(store.mu);
  return store.pred_l(*this);
}

std::uint32_t Nat::depth() const { return node_ != nullptr ? node_->depth : 0; }

double Nat::log2_estimate() const {
  if (node_ != nullptr) return node_->log2;
  return lit_ == 0 ? 0.0 : std::log2(static_cast<double>(lit_));
}

std::size_t Nat::hash() const {
  if (node_ != nullptr) return node_->hash;
  return static_cast<std::size_t>(mix64(lit_));
}

Nat Nat::from_u128(unsigned __int128 v) {
  if (v < kLiteralBound) return Nat(static_cast<std::uint64_t>(v), nullptr);
  auto& store = NatStore::instance();
  std::lock_guard lock(store.mu);
  return store.from_u128_l(v);
}

namespace {

struct ResidueKey {
  const detail::Node* node;
  unsigned bits;
  bool operator==(const ResidueKey& o) const { return node == o.node && bits == o.bits; }
};
struct ResidueKeyHash {
  std::size_t operator()(const ResidueKey& k) const {
    return std::hash<const void*>()(k.node) ^ (static_cast<std::size_t>(k.bits) << 48);
  }
};

}  // namespace

mpz_class Nat::low_bits(unsigned bits) const {
  std::unordered_map<ResidueKey, mpz_class, ResidueKeyHash> memo;
  struct Rec {
    std::unordered_map<ResidueKey, mpz_class, ResidueKeyHash>& memo;
    mpz_class operator()(const Nat& n, unsigned k) {
      if (n.is_small()) {
        mpz_class v;
        mpz_import(v.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &n.lit_);
        mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), k);
        return v;
      }
      ResidueKey key{n.node_, k};
      if (auto it = memo.find(key); it != memo.end()) return it->second;
      mpz_class ra = (*this)(n.node_->first, k + 1);
      mpz_class rb = (*this)(n.node_->second, k + 1);
      mpz_class s = ra + rb;
      mpz_class t = s * (s + 1);
      mpz_fdiv_r_2exp(t.get_mpz_t(), t.get_mpz_t(), k + 1);
      t /= 2;
      mpz_class r = t + rb;
      mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), k);
      memo.emplace(key, r);
      return r;
    }
  };
  return Rec{memo}(*this, bits);
}

bool Nat::is_even() const {
  if (node_ == nullptr) return (lit_ & 1) == 0;
  return low_bits(1) == 0;
}

std::optional<mpz_class> Nat::to_mpz(double max_bits) const {
  if (log2_estimate() > max_bits) return std::nullopt;
  std::unordered_map<const detail::Node*, mpz_class> memo;
  struct Rec {
    std::unordered_map<const detail::Node*, mpz_class>& memo;
    mpz_class operator()(const Nat& n) {
      if (n.is_small()) {
        mpz_class v;
        mpz_import(v.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &n.lit_);
        return v;
      }
      if (auto it = memo.find(n.node_); it != memo.end()) return it->second;
      mpz_class x = (*this)(n.node_->first);
      mpz_class y = (*this)(n.node_->second);
      mpz_class s = x + y;
      mpz_class v = s * (s + 1) / 2 + y;
      memo.emplace(n.node_, v);
      return v;
    }
  };
  return Rec{memo}(*this);
}

Nat Nat::from_mpz(const mpz_class& v) {
  if (sgn(v) < 0) throw std::invalid_argument("negative natural");
  if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 62) {
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, v.get_mpz_t());
    return Nat(out);
  }
  mpz_class disc = 8 * v + 1;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  mpz_class s = (root - 1) / 2;
  mpz_class y = v - s * (s + 1) / 2;
  mpz_class x = s - y;
  return pair(from_mpz(x), from_mpz(y));
}

std::optional<std::string> Nat::to_decimal(double max_bits) const {
  if (node_ == nullptr) return std::to_string(lit_);
  auto v = to_mpz(max_bits);
  if (!v) return std::nullopt;
  return v->get_str(10);
}

std::string Nat::describe() const {
  if (auto d = to_decimal(256)) return *d;
  std::ostringstream os;
  const double bits = log2_estimate();
  os << "#<2^";
  if (bits < 1e15)
    os << static_cast<long long>(bits);
  else
    os << std::setprecision(4) << bits;
  os << " depth=" << depth() << " h=" << std::hex
     << hash() << ">";
  return os.str();
}

Nat Nat::from_decimal(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("not a decimal natural: '" + text + "'");
  return from_mpz(mpz_class(text, 10));
}

int Nat::compare(const Nat& a, const Nat& b) {
  if (a == b) return 0;
  if (a.is_small() && b.is_small()) return a.lit_ < b.lit_ ? -1 : 1;
  if (a.is_small()) return -1;
  if (b.is_small()) return 1;
  constexpr double kLimit = 1 << 24;
  auto ma = a.to_mpz(kLimit);
  auto mb = b.to_mpz(kLimit);
  if (ma && mb) return cmp(*ma, *mb) < 0 ? -1 : 1;
  const double diff = a.log2_estimate() - b.log2_estimate();
  if (diff > 4.0) return 1;
  if (diff < -4.0) return -1;
  throw std::domain_error("cannot order two naturals of ~2^" +
                          std::to_string(a.log2_estimate()) + " bits");
}

std::size_t interned_node_count() { return NatStore::instance().size(); }

}  // namespace wb
