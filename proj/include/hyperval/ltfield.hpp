#pragma once

// Leading-term hyperfields.
//
// K_gamma(F_q): F_q((t)) modulo the 1-units 1 + t^(gamma+1) F_q[[t]], optionally
// also modulo a subgroup S of F_q^x. A class is a value v together with the
// first gamma+1 coefficients of t^-v x.
//
// Composite: Q(X) with v = v_p o v_X modulo 1 + X Q[[X]]; a class is X^n c.
//
// Hypersums are unions of ultrametric balls kept in a canonical form (the
// maximal balls contained in the set), so set equality is exact.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "hyperval/hcore.hpp"
#include "hyperval/oag.hpp"
#include "hyperval/window.hpp"

namespace hyperval {

inline constexpr int kMaxGamma = 15;
inline constexpr std::size_t kMaxWindow = 4096;
/// Above this size a finite ball is reported by its prefix and free digits.
inline constexpr std::int64_t kMaterializeCap = 10000;
inline constexpr std::int64_t kInfRadius = std::numeric_limits<std::int64_t>::max();

using Digits = std::array<std::uint8_t, kMaxGamma + 1>;

struct LTContext {
  GaloisField field;
  int gamma = 0;
  std::vector<int> scalars{1};  // sorted subgroup of F_q^x

  int q() const { return field.q; }
  bool trivial_scalars() const { return scalars.size() == 1; }
  nlohmann::json to_json() const;
};

/// scalar_gens generate S inside F_q^x (empty: S = {1}).
LTContext make_lt_context(int q, int gamma, std::optional<std::vector<int>> modulus = std::nullopt,
                          const std::vector<int>& scalar_gens = {});
/// S = F_q^x.
LTContext make_lt_context_full_units(int q, int gamma);

struct LTElement {
  bool zero = true;
  std::int64_t value = 0;
  Digits c{};

  bool operator==(const LTElement& o) const { return zero == o.zero && value == o.value && c == o.c; }
  bool operator<(const LTElement& o) const;
};

LTElement lt_zero();
/// Builds and canonicalizes a class; coeffs has length gamma+1 with coeffs[0] != 0.
LTElement lt_make(const LTContext& ctx, std::int64_t value, const std::vector<int>& coeffs);
std::vector<int> lt_coeffs(const LTContext& ctx, const LTElement& x);
LTElement lt_mul(const LTContext& ctx, const LTElement& x, const LTElement& y);
LTElement lt_neg(const LTContext& ctx, const LTElement& x);
LTElement lt_inv(const LTContext& ctx, const LTElement& x);
ExtValue lt_valuation(const LTElement& x);
/// rho = [0, gamma] as a cut of Z.
Cut lt_norm(const LTContext& ctx);
std::string lt_name(const LTContext& ctx, const LTElement& x);
nlohmann::json lt_to_json(const LTContext& ctx, const LTElement& x);

/// {[s] : v(s - center) >= radius}. A zero center also covers 0; radius
/// kInfRadius with a zero center is {0}. A nonzero center has lo < radius <=
/// lo + gamma + 1 and d[i] is its coefficient at position lo + i.
struct LTBall {
  bool zero_center = true;
  std::int64_t lo = 0;
  std::int64_t radius = kInfRadius;
  Digits d{};

  bool operator==(const LTBall& o) const;
  bool operator<(const LTBall& o) const;
};

class LTSet {
 public:
  LTSet() = default;
  LTSet(const LTContext& ctx, std::vector<LTBall> balls);  // canonicalizes

  const std::vector<LTBall>& balls() const { return balls_; }
  bool operator==(const LTSet& o) const { return balls_ == o.balls_; }
  bool operator<(const LTSet& o) const { return balls_ < o.balls_; }

 private:
  std::vector<LTBall> balls_;
};

bool lt_contains(const LTContext& ctx, const LTSet& s, const LTElement& x);
LTSet lt_add(const LTContext& ctx, const LTElement& x, const LTElement& y);
LTSet lt_add(const LTContext& ctx, const LTSet& s, const LTElement& z);
LTSet lt_scale(const LTContext& ctx, const LTSet& s, const LTElement& x);
bool lt_subset(const LTContext& ctx, const LTSet& a, const LTSet& b);
bool lt_intersects(const LTContext& ctx, const LTSet& a, const LTSet& b);
bool lt_is_singleton(const LTContext& ctx, const LTSet& s);
/// Singleton, finite (prefix plus free digits, size up to kMaterializeCap) or above-value form.
nlohmann::json lt_set_to_json(const LTContext& ctx, const LTSet& s);
std::string lt_set_name(const LTContext& ctx, const LTSet& s);

/// Zero plus every class of value in [-bound, bound].
std::vector<LTElement> enumerate_window(const LTContext& ctx, std::int64_t bound);

class LTHyperfield {
 public:
  using Elem = LTElement;
  using Set = LTSet;

  LTHyperfield(LTContext ctx, std::int64_t bound);

  const LTContext& context() const { return ctx_; }
  std::int64_t bound() const { return bound_; }
  std::size_t rank() const { return 1; }
  Elem zero() const { return lt_zero(); }
  Elem one() const;
  const std::vector<Elem>& window() const { return window_; }

  Set add(const Elem& x, const Elem& y) const { return lt_add(ctx_, x, y); }
  Set add(const Set& s, const Elem& z) const { return lt_add(ctx_, s, z); }
  Set scale(const Set& s, const Elem& x) const { return lt_scale(ctx_, s, x); }
  Elem mul(const Elem& x, const Elem& y) const { return lt_mul(ctx_, x, y); }
  Elem neg(const Elem& x) const { return lt_neg(ctx_, x); }
  Elem inv(const Elem& x) const { return lt_inv(ctx_, x); }

  bool contains(const Set& s, const Elem& x) const { return lt_contains(ctx_, s, x); }
  bool subset(const Set& a, const Set& b) const { return lt_subset(ctx_, a, b); }
  bool intersects(const Set& a, const Set& b) const { return lt_intersects(ctx_, a, b); }
  bool is_singleton(const Set& s) const { return lt_is_singleton(ctx_, s); }

  ExtValue value(const Elem& x) const { return lt_valuation(x); }
  std::vector<GroupElem> value_window() const;
  SetShape shape(const Set& s) const;

  std::string name(const Elem& x) const { return lt_name(ctx_, x); }
  std::string name(const Set& s) const { return lt_set_name(ctx_, s); }
  nlohmann::json to_json(const Elem& x) const { return lt_to_json(ctx_, x); }
  std::string subject() const;
  nlohmann::json window_params() const;

 private:
  LTContext ctx_;
  std::int64_t bound_;
  std::vector<Elem> window_;
};

// ---------------------------------------------------------------------------

struct CompositeContext {
  int p = 2;
  nlohmann::json to_json() const { return {{"p", p}}; }
};

struct CompElement {
  bool zero = true;
  std::int64_t n = 0;
  mpq_class c;

  bool operator==(const CompElement& o) const;
  bool operator<(const CompElement& o) const;
};

/// Zero, or every element whose first value coordinate exceeds n (plus 0).
struct CompSet {
  bool above = false;
  CompElement elem;
  std::int64_t n = 0;

  static CompSet single(CompElement e);
  static CompSet above_n(std::int64_t n);
  bool operator==(const CompSet& o) const;
  bool operator<(const CompSet& o) const;
};

CompElement comp_zero();
CompElement comp_make(std::int64_t n, const mpq_class& c);
/// Parses "a/b" or "a".
CompElement comp_make(std::int64_t n, const std::string& c);
CompElement comp_mul(const CompElement& x, const CompElement& y);
CompElement comp_neg(const CompElement& x);
CompElement comp_inv(const CompElement& x);
CompSet comp_add(const CompElement& x, const CompElement& y);
bool comp_contains(const CompSet& s, const CompElement& x);
std::int64_t ord_p(const mpq_class& c, int p);
ExtValue comp_valuation(const CompositeContext& ctx, const CompElement& x);
/// rho = {m : m1 <= 0} in Z^2.
Cut comp_norm();
std::string comp_name(const CompElement& x);
nlohmann::json comp_to_json(const CompElement& x);
nlohmann::json comp_set_to_json(const CompSet& s);

/// Zero plus X^n a/b for |n| <= bound, 1 <= |a|, b <= rational_bound, gcd 1.
std::vector<CompElement> enumerate_window(const CompositeContext& ctx, std::int64_t bound,
                                          std::int64_t rational_bound);

class CompositeHyperfield {
 public:
  using Elem = CompElement;
  using Set = CompSet;

  CompositeHyperfield(CompositeContext ctx, std::int64_t bound, std::int64_t rational_bound);

  const CompositeContext& context() const { return ctx_; }
  std::size_t rank() const { return 2; }
  Elem zero() const { return comp_zero(); }
  Elem one() const { return comp_make(0, mpq_class(1)); }
  const std::vector<Elem>& window() const { return window_; }

  Set add(const Elem& x, const Elem& y) const { return comp_add(x, y); }
  Set add(const Set& s, const Elem& z) const;
  Set scale(const Set& s, const Elem& x) const;
  Elem mul(const Elem& x, const Elem& y) const { return comp_mul(x, y); }
  Elem neg(const Elem& x) const { return comp_neg(x); }
  Elem inv(const Elem& x) const { return comp_inv(x); }

  bool contains(const Set& s, const Elem& x) const { return comp_contains(s, x); }
  bool subset(const Set& a, const Set& b) const;
  bool intersects(const Set& a, const Set& b) const;
  bool is_singleton(const Set& s) const { return !s.above; }

  ExtValue value(const Elem& x) const { return comp_valuation(ctx_, x); }
  /// Values (n, k) with |n| <= bound and p^|k| <= rational_bound.
  std::vector<GroupElem> value_window() const;
  SetShape shape(const Set& s) const;

  std::string name(const Elem& x) const { return comp_name(x); }
  std::string name(const Set& s) const;
  nlohmann::json to_json(const Elem& x) const { return comp_to_json(x); }
  std::string subject() const;
  nlohmann::json window_params() const;

 private:
  CompositeContext ctx_;
  std::int64_t bound_;
  std::int64_t rational_bound_;
  std::vector<Elem> window_;
};

}  // namespace hyperval
