#pragma once

// Ordered abelian groups Z^n under the lexicographic order: elements, prefix
// cuts (initial segments), convex subgroups and the value maps used for
// coarsenings.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "hyperval/errors.hpp"

namespace hyperval {

inline constexpr std::size_t kMaxRank = 8;

enum class Ordering { LT, EQ, GT };

/// Element of Z^n. Arithmetic is componentwise; rank is fixed per context.
class GroupElem {
 public:
  GroupElem() = default;
  explicit GroupElem(std::size_t rank);
  GroupElem(std::initializer_list<std::int64_t> coords);
  explicit GroupElem(const std::vector<std::int64_t>& coords);

  static GroupElem zero(std::size_t rank) { return GroupElem(rank); }
  static GroupElem unit(std::size_t rank, std::size_t i);

  std::size_t rank() const { return rank_; }
  std::int64_t operator[](std::size_t i) const { return c_[i]; }
  std::int64_t& operator[](std::size_t i) { return c_[i]; }
  std::vector<std::int64_t> coords() const;
  bool is_zero() const;

  /// First k coordinates.
  GroupElem prefix(std::size_t k) const;

  GroupElem operator+(const GroupElem& o) const;
  GroupElem operator-(const GroupElem& o) const;
  GroupElem operator-() const;
  GroupElem scaled(std::int64_t c) const;

  bool operator==(const GroupElem& o) const;
  bool operator!=(const GroupElem& o) const { return !(*this == o); }
  /// Lexicographic; ranks must agree.
  bool operator<(const GroupElem& o) const;
  bool operator<=(const GroupElem& o) const { return !(o < *this); }
  bool operator>(const GroupElem& o) const { return o < *this; }
  bool operator>=(const GroupElem& o) const { return !(*this < o); }

  std::string str() const;

 private:
  std::array<std::int64_t, kMaxRank> c_{};
  std::uint8_t rank_ = 0;
};

/// Lexicographic comparison. Throws UsageError on rank mismatch.
Ordering lex_compare(const GroupElem& a, const GroupElem& b);

/// Element of Gamma together with a top element infinity (the value of 0).
class ExtValue {
 public:
  ExtValue() = default;  // infinity
  ExtValue(GroupElem g) : g_(std::move(g)) {}  // NOLINT(implicit)
  static ExtValue infinity() { return ExtValue(); }

  bool is_infinite() const { return !g_.has_value(); }
  const GroupElem& finite() const;

  bool operator==(const ExtValue& o) const { return g_ == o.g_; }
  bool operator!=(const ExtValue& o) const { return !(*this == o); }
  /// Infinity is greater than every group element.
  bool operator<(const ExtValue& o) const;
  bool operator<=(const ExtValue& o) const { return !(o < *this); }
  bool operator>(const ExtValue& o) const { return o < *this; }
  bool operator>=(const ExtValue& o) const { return !(*this < o); }

  ExtValue operator+(const ExtValue& o) const;
  std::string str() const;

 private:
  std::optional<GroupElem> g_;
};

Ordering ext_compare(const ExtValue& a, const ExtValue& b);
ExtValue ext_min(const ExtValue& a, const ExtValue& b);

/// Convex subgroup {0}^k x Z^(n-k) of Z^n.
struct ConvexSubgroup {
  std::size_t suffix_index = 0;
  std::size_t rank = 0;

  static ConvexSubgroup trivial(std::size_t n) { return {n, n}; }
  static ConvexSubgroup whole(std::size_t n) { return {0, n}; }

  bool contains(const GroupElem& g) const;
  bool operator==(const ConvexSubgroup&) const = default;
  std::string str() const;
};

/// Prefix-bounded initial segment of Z^n:
///   { m | prefix_k(m) < bound, or (inclusive and prefix_k(m) == bound) }.
/// prefix_len 0 with inclusive is all of Z^n, exclusive the empty set.
class Cut {
 public:
  Cut() = default;
  Cut(std::size_t rank, std::size_t prefix_len, GroupElem bound, bool inclusive);

  static Cut all(std::size_t rank) { return Cut(rank, 0, GroupElem(0), true); }
  static Cut empty(std::size_t rank) { return Cut(rank, 0, GroupElem(0), false); }
  /// { m | m <= g } over the full length of g.
  static Cut at_most(const GroupElem& g) { return Cut(g.rank(), g.rank(), g, true); }
  /// { m | m < g }.
  static Cut below(const GroupElem& g) { return Cut(g.rank(), g.rank(), g, false); }

  std::size_t rank() const { return rank_; }
  std::size_t prefix_len() const { return len_; }
  const GroupElem& bound() const { return bound_; }
  bool inclusive() const { return inclusive_; }

  bool is_all() const { return len_ == 0 && inclusive_; }
  bool is_empty() const { return len_ == 0 && !inclusive_; }

  /// Same set, with every non-trivial cut rewritten as an inclusive one.
  Cut normalized() const;

  bool operator==(const Cut& o) const;
  bool operator!=(const Cut& o) const { return !(*this == o); }

  std::string str() const;

 private:
  GroupElem bound_;
  std::size_t rank_ = 0;
  std::size_t len_ = 0;
  bool inclusive_ = true;
};

bool cut_contains(const Cut& rho, const GroupElem& g);
/// g > rho, i.e. g lies above the segment. Infinity is above every cut.
bool above_cut(const Cut& rho, const ExtValue& v);
/// rho + g.
Cut cut_shift(const Cut& rho, const GroupElem& g);
/// rho1 is a subset of rho2.
bool cut_subset(const Cut& rho1, const Cut& rho2);
ConvexSubgroup invariance_group(const Cut& rho);

/// Image of g in Gamma / Delta, identified with Z^k.
GroupElem quotient_by_convex(const GroupElem& g, const ConvexSubgroup& delta);

/// Order-preserving homomorphism Z^n -> Z^keep, g |-> scale * prefix_keep(g).
/// Covers identities, coarsenings, rescalings and the trivial map (keep 0).
struct ValueMap {
  std::size_t source_rank = 0;
  std::size_t keep = 0;
  std::int64_t scale = 1;

  static ValueMap identity(std::size_t n) { return {n, n, 1}; }
  static ValueMap projection(std::size_t n, std::size_t k) { return {n, k, 1}; }

  GroupElem apply(const GroupElem& g) const;
  ExtValue apply(const ExtValue& v) const;
  /// this after inner.
  ValueMap after(const ValueMap& inner) const;
  /// { g in Z^n | apply(g) in rho }, again a prefix cut.
  Cut preimage(const Cut& rho) const;
  std::string str() const;
};

/// Box [-bound, bound]^n in lexicographic order.
std::vector<GroupElem> group_window(std::size_t rank, std::int64_t bound);

/// Convexity of a subgroup tested on a window: delta1 < g < delta2 with delta_i
/// in the subgroup forces g into it.
bool is_convex_on_window(const std::function<bool(const GroupElem&)>& member,
                         std::size_t rank, std::int64_t bound);

}  // namespace hyperval
