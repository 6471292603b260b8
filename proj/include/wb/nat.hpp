#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace wb {

namespace detail {
struct Node;
}

/// An arbitrary natural number in Cantor-pair canonical form.
///
/// Values below `kLiteralBound` are stored inline. Larger values are stored
/// as an interned node holding the two canonical components of
/// `unpair(value)`. Because the representation is canonical, equality is
/// structural and `pair`, `first`, `second` are O(1). `succ` and `pred` are
/// exact and memoised, costing O(depth) the first time they touch a node.
///
/// Program codes built by self-application routinely exceed 2^(2^40), so the
/// binary value of a `Nat` is only materialised on request (`to_mpz`,
/// `to_decimal`) and only when it is small enough to fit.
class Nat {
 public:
  static constexpr std::uint64_t kLiteralBound = std::uint64_t{1} << 62;

  constexpr Nat() = default;
  constexpr Nat(std::uint64_t v) : lit_(v) {  // NOLINT(google-explicit-constructor)
    if (v >= kLiteralBound) *this = from_u128(v);
  }

  /// Cantor pairing: (x+y)(x+y+1)/2 + y.
  static Nat pair(const Nat& x, const Nat& y);
  std::pair<Nat, Nat> unpair() const;
  Nat first() const;
  Nat second() const;

  Nat succ() const;
  /// Monus: pred(0) = 0.
  Nat pred() const;

  bool is_zero() const { return node_ == nullptr && lit_ == 0; }
  bool is_small() const { return node_ == nullptr; }
  /// Inline value; only meaningful when `is_small()`.
  std::uint64_t small() const { return lit_; }
  std::optional<std::uint64_t> to_u64() const {
    if (node_ != nullptr) return std::nullopt;
    return lit_;
  }

  /// Depth of the canonical pair tree (0 for inline values).
  std::uint32_t depth() const;
  /// Approximate log2 of the value; exact enough to decide materialisation.
  double log2_estimate() const;

  /// Lowest `bits` bits of the value, computed structurally (no
  /// materialisation), so parity of astronomically large codes is cheap.
  mpz_class low_bits(unsigned bits) const;
  bool is_even() const;

  std::optional<mpz_class> to_mpz(double max_bits = 1 << 22) const;
  static Nat from_mpz(const mpz_class& v);
  static Nat from_u128(unsigned __int128 v);

  std::optional<std::string> to_decimal(double max_bits = 1 << 22) const;
  /// Decimal if small enough, otherwise a short structural digest.
  std::string describe() const;
  /// Throws std::invalid_argument on malformed input.
  static Nat from_decimal(const std::string& text);

  /// 64-bit structural hash; equal values hash equal.
  std::size_t hash() const;

  friend bool operator==(const Nat& a, const Nat& b) {
    return a.lit_ == b.lit_ && a.node_ == b.node_;
  }
  friend bool operator!=(const Nat& a, const Nat& b) { return !(a == b); }

  /// Numeric order. Throws std::domain_error when both values are too large
  /// to materialise and differ only beyond the estimate's resolution.
  static int compare(const Nat& a, const Nat& b);
  friend bool operator<(const Nat& a, const Nat& b) { return compare(a, b) < 0; }

 private:
  friend struct detail::Node;
  friend class NatStore;
  constexpr Nat(std::uint64_t lit, const detail::Node* node) : lit_(lit), node_(node) {}

  std::uint64_t lit_ = 0;
  const detail::Node* node_ = nullptr;
};

struct NatHash {
  std::size_t operator()(const Nat& n) const { return n.hash(); }
};

/// Number of interned nodes created so far (diagnostics only).
std::size_t interned_node_count();

}  // namespace wb

template <>
struct std::hash<wb::Nat> {
  std::size_t operator()(const wb::Nat& n) const { return n.hash(); }
};
