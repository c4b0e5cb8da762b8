#pragma once

// Finite hyperfields as explicit tables.
//
// Element 0 is the additive zero and element 1 the multiplicative unit. The
// hypersum x + y is stored as a membership mask over the carrier, so carriers
// are limited to 64 elements.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hyperval/errors.hpp"
#include "hyperval/report.hpp"

namespace hyperval {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaxCarrier = 64;

inline Mask bit(int i) { return Mask{1} << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1U; }
std::vector<int> members(Mask m);
int popcount(Mask m);

class FiniteHyperfield {
 public:
  FiniteHyperfield() = default;
  /// Checks shape only (square tables, indices in range, non-empty cells).
  /// Axioms are left to validate(). neg(x) is -1 when x has no unique inverse.
  FiniteHyperfield(std::vector<std::string> names, std::vector<int> mul, std::vector<Mask> add,
                   nlohmann::json meta = nlohmann::json::object());

  std::size_t size() const { return n_; }
  const std::string& name(int x) const { return names_[x]; }
  const std::vector<std::string>& names() const { return names_; }
  int mul(int x, int y) const { return mul_[x * n_ + y]; }
  Mask add(int x, int y) const { return add_[x * n_ + y]; }
  int neg(int x) const { return neg_[x]; }
  /// Multiplicative inverse, -1 for 0 or when none exists.
  int inv(int x) const { return inv_[x]; }
  const nlohmann::json& meta() const { return meta_; }
  nlohmann::json& meta() { return meta_; }

  /// A + y, A + B and x * A on masks.
  Mask add(Mask a, int y) const;
  Mask add(Mask a, Mask b) const;
  Mask scale(Mask a, int x) const;
  Mask carrier() const { return n_ == 64 ? ~Mask{0} : (bit(static_cast<int>(n_)) - 1); }
  std::string format(Mask m) const;

  const std::vector<int>& mul_table() const { return mul_; }
  const std::vector<Mask>& add_table() const { return add_; }

  bool operator==(const FiniteHyperfield& o) const;

 private:
  std::size_t n_ = 0;
  std::vector<std::string> names_;
  std::vector<int> mul_;
  std::vector<Mask> add_;
  std::vector<int> neg_;
  std::vector<int> inv_;
  nlohmann::json meta_;
};

nlohmann::json to_json(const FiniteHyperfield& f);
FiniteHyperfield hyperfield_from_json(const nlohmann::json& j);

/// CH1-CH4, neutrality of 0, HR2, HR3 and the unit group, all exhaustively.
ValidationReport validate(const FiniteHyperfield& f);

/// Same verdict as validate(f).passed(), with early exit on the cheap axioms.
bool satisfies_axioms(const FiniteHyperfield& f);

bool is_field(const FiniteHyperfield& f);
bool all_sums_singletons(const FiniteHyperfield& f);

FiniteHyperfield build_K();
FiniteHyperfield build_S();
FiniteHyperfield build_W();

/// Arithmetic of F_q, q = p^k, with elements encoded as base-p digit strings
/// of polynomials modulo a monic irreducible modulus.
struct GaloisField {
  int p = 0;
  int k = 0;
  int q = 0;
  std::vector<int> modulus;  // low to high, monic, length k+1
  std::vector<int> add_t, mul_t, neg_t, inv_t;

  int add(int a, int b) const { return add_t[a * q + b]; }
  int mul(int a, int b) const { return mul_t[a * q + b]; }
  int neg(int a) const { return neg_t[a]; }
  int inv(int a) const { return inv_t[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  std::string name(int a) const;
  /// Smallest generator of the unit group.
  int primitive_element() const;
};

/// Default modulus: the lexicographically first monic irreducible polynomial
/// of degree k (coefficients compared from the constant term upward).
GaloisField make_galois_field(int q, std::optional<std::vector<int>> modulus = std::nullopt);
std::optional<std::pair<int, int>> prime_power(int q);
bool is_irreducible(const std::vector<int>& poly, int p);

FiniteHyperfield build_finite_field(int q, std::optional<std::vector<int>> modulus = std::nullopt);

/// Multiplicative subgroup of a finite field generated by gens (closure).
Mask generated_subgroup(const FiniteHyperfield& k, const std::vector<int>& gens);
/// Factor hyperfield K_T with xT + yT = {(x + yt)T | t in T}. Coset order:
/// {0}, T, then remaining cosets by their least element.
FiniteHyperfield quotient_hyperfield(const FiniteHyperfield& k, const std::vector<int>& gens);
/// Generator of the subgroup of the given order in the cyclic group F_q^x.
std::vector<int> cyclic_subgroup_generators(const FiniteHyperfield& k, int order);

struct Morphism {
  std::vector<int> map;
  bool operator==(const Morphism&) const = default;
};

bool is_homomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s);
bool is_embedding(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s);
/// Surjective, injective and EM1.
bool is_isomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s);
/// Bijective with a homomorphic inverse; agrees with is_isomorphism.
bool inverse_is_homomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s);
/// Lexicographically least isomorphism, if any.
std::optional<Morphism> find_isomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g);

struct Classification {
  bool is_field = false;
  bool char2 = false;
  bool cchar1 = false;
  bool stringent = false;
  bool superiorly_canonical = false;
  ValidationReport sch;
  nlohmann::json to_json() const;
};

ValidationReport check_superiorly_canonical(const FiniteHyperfield& f);
Classification classify(const FiniteHyperfield& f);

/// Traditional subhyperring closed under multiplication by ring elements.
bool is_hyperideal(const FiniteHyperfield& f, Mask ideal, std::optional<Mask> ring = std::nullopt);
Mask scalar_hyperideal(const FiniteHyperfield& f);
/// All hyperideals of the ring (default: the whole hyperfield), ordered by mask.
std::vector<Mask> list_hyperideals(const FiniteHyperfield& f, std::optional<Mask> ring = std::nullopt);

struct NonQuotientCertificate {
  Mask reachable = 0;  // every value of an iterated sum 1 + ... + 1
  std::string criterion;
};
/// Present iff 1 is not in 1+1 and 0 is not in any finite sum of copies of 1.
std::optional<NonQuotientCertificate> non_quotient_certificate(const FiniteHyperfield& f);

struct QuotientWitness {
  int q = 0;
  std::vector<int> generators;
  Morphism iso;
};
/// First F_q (q <= q_max) with a subgroup T such that (F_q)_T is isomorphic to f.
/// A miss is not a proof that f is not a factor hyperfield.
std::optional<QuotientWitness> quotient_search(const FiniteHyperfield& f, int q_max);

inline constexpr int kEnumerationCap = 6;
/// Cyclic factor orders of the unit group, e.g. {2,2} for C2 x C2.
std::vector<int> parse_group_descriptor(const std::string& s);
std::string group_descriptor(const std::vector<int>& factors);
/// Unit group descriptors available at a given order.
std::vector<std::vector<int>> unit_groups_of_order(int order);
/// Hyperfields with the given unit group up to isomorphism, in discovery order.
std::vector<FiniteHyperfield> enumerate_hyperfields(int order, const std::vector<int>& group,
                                                    int cap = kEnumerationCap);
/// Union over all unit groups of the order.
std::vector<FiniteHyperfield> enumerate_hyperfields(int order, int cap = kEnumerationCap);

}  // namespace hyperval
