#pragma once

// Tropical hyperfields T(G) and T'(G) over G = Z^n with lexicographic order.
//
// Careful with the two zeros: the additive zero of the hyperfield is infinity,
// and the multiplicative unit is the group identity 0_G.

#include <string>
#include <vector>

#include <json.hpp>

#include "hyperval/hcore.hpp"
#include "hyperval/oag.hpp"
#include "hyperval/report.hpp"
#include "hyperval/window.hpp"

namespace hyperval {

using TropElem = ExtValue;

/// Hypersum of T(G): a single point, or a ray {z >= bound} / {z > bound}
/// together with infinity.
class TropSet {
 public:
  static TropSet point(TropElem x);
  static TropSet ray(GroupElem bound, bool inclusive);

  bool is_point() const { return !is_ray_; }
  bool is_ray() const { return is_ray_; }
  const TropElem& point_value() const { return at_; }
  const GroupElem& bound() const { return at_.finite(); }
  bool inclusive() const { return inclusive_; }

  /// Equality is by membership; (b, inf] and [b + e_n, inf] coincide on Z^n.
  bool operator==(const TropSet& o) const;
  bool operator<(const TropSet& o) const;

  std::string str() const;
  nlohmann::json to_json() const;

 private:
  TropSet() = default;
  GroupElem min_member() const;  // rays only

  TropElem at_;
  bool is_ray_ = false;
  bool inclusive_ = true;
};

bool trop_contains(const TropSet& s, const TropElem& x);
bool trop_subset(const TropSet& a, const TropSet& b);

TropSet t_add(const TropElem& x, const TropElem& y, bool strict);
TropElem t_mul(const TropElem& x, const TropElem& y);
std::string trop_name(const TropElem& x);
nlohmann::json trop_to_json(const TropElem& x);

/// Window backend: group elements in [-bound, bound]^rank plus infinity.
class TropicalHyperfield {
 public:
  using Elem = TropElem;
  using Set = TropSet;

  TropicalHyperfield(std::size_t rank, bool strict, std::int64_t bound);

  std::size_t rank() const { return rank_; }
  bool strict() const { return strict_; }
  Elem zero() const { return ExtValue::infinity(); }
  Elem one() const { return GroupElem::zero(rank_); }
  const std::vector<Elem>& window() const { return window_; }

  Set add(const Elem& x, const Elem& y) const { return t_add(x, y, strict_); }
  Set add(const Set& s, const Elem& z) const;
  Set scale(const Set& s, const Elem& x) const;
  Elem mul(const Elem& x, const Elem& y) const { return t_mul(x, y); }
  Elem neg(const Elem& x) const { return x; }
  Elem inv(const Elem& x) const;

  bool contains(const Set& s, const Elem& x) const { return trop_contains(s, x); }
  bool subset(const Set& a, const Set& b) const { return trop_subset(a, b); }
  bool intersects(const Set& a, const Set& b) const;
  bool is_singleton(const Set& s) const { return s.is_point(); }

  ExtValue value(const Elem& x) const { return x; }
  std::vector<GroupElem> value_window() const { return group_window(rank_, bound_); }
  SetShape shape(const Set& s) const;

  std::string name(const Elem& x) const { return trop_name(x); }
  std::string name(const Set& s) const { return s.str(); }
  std::string subject() const;
  nlohmann::json window_params() const;

 private:
  std::size_t rank_;
  bool strict_;
  std::int64_t bound_;
  std::vector<Elem> window_;
};

ValidationReport tropical_axiom_suite(std::size_t rank, bool strict, std::int64_t bound = 3);

/// pi_Delta : T(G) -> T(G / Delta).
TropElem pi_delta(const TropElem& x, const ConvexSubgroup& delta);
/// HH1-HH5 and surjectivity of pi_Delta on the window.
ValidationReport check_pi_delta(std::size_t rank, const ConvexSubgroup& delta, std::int64_t bound = 3);
/// x = inf, or x in Delta, or x above Delta.
bool valuation_ring_of_pi_delta(const TropElem& x, const ConvexSubgroup& delta);
/// Same ring read off as the preimage of 0 [+] 0 in T(G / Delta).
bool valuation_ring_via_unit_sum(const TropElem& x, const ConvexSubgroup& delta);

/// {inf, 0} with the induced hypersum (x + y intersected with the subset).
FiniteHyperfield tropical_unit_subhyperfield(std::size_t rank, bool strict);
/// Whether {inf, 0} is closed under the full hypersum of T(G).
bool tropical_unit_subset_closed(std::size_t rank, bool strict);

}  // namespace hyperval
