#pragma once

// Valuations on hyperfield backends.
//
// A valuation is the backend's intrinsic value composed with a ValueMap
// (identity, a coarsening projection, or a rescaling). All quantifiers range
// over the backend window; finite backends are checked exhaustively.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperval/errors.hpp"
#include "hyperval/hcore.hpp"
#include "hyperval/ltfield.hpp"
#include "hyperval/oag.hpp"
#include "hyperval/report.hpp"
#include "hyperval/tropical.hpp"
#include "hyperval/window.hpp"

namespace hyperval {

/// Finite hyperfield viewed as a backend, with an explicit value table.
class FiniteBackend {
 public:
  using Elem = int;
  using Set = Mask;

  /// Trivial valuation into Z: 0 -> inf, units -> 0.
  explicit FiniteBackend(FiniteHyperfield f);
  FiniteBackend(FiniteHyperfield f, std::vector<ExtValue> values);

  const FiniteHyperfield& hyperfield() const { return f_; }
  bool exhaustive() const { return true; }
  std::size_t rank() const { return 1; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  const std::vector<Elem>& window() const { return window_; }

  Set add(Elem x, Elem y) const { return f_.add(x, y); }
  Set add(Set s, Elem z) const { return f_.add(s, z); }
  Set scale(Set s, Elem x) const { return f_.scale(s, x); }
  Elem mul(Elem x, Elem y) const { return f_.mul(x, y); }
  Elem neg(Elem x) const;
  Elem inv(Elem x) const;

  bool contains(Set s, Elem x) const { return has(s, x); }
  bool subset(Set a, Set b) const { return (a & ~b) == 0; }
  bool intersects(Set a, Set b) const { return (a & b) != 0; }
  bool is_singleton(Set s) const { return popcount(s) == 1; }

  ExtValue value(Elem x) const { return values_[x]; }
  SetShape shape(Set s) const;

  std::string name(Elem x) const { return f_.name(x); }
  std::string name(Set s) const { return f_.format(s); }
  std::string subject() const;
  nlohmann::json window_params() const;

 private:
  FiniteHyperfield f_;
  std::vector<ExtValue> values_;
  std::vector<Elem> window_;
};

struct Valuation {
  std::string name = "v";
  ValueMap map;

  static Valuation intrinsic(std::size_t rank, std::string name = "v") {
    return {std::move(name), ValueMap::identity(rank)};
  }
};

template <class B>
ExtValue eval(const B& b, const Valuation& v, const typename B::Elem& x) {
  return v.map.apply(b.value(x));
}

inline GroupElem value_zero(const Valuation& v) { return GroupElem::zero(v.map.keep); }

template <class B>
bool in_valuation_ring(const B& b, const Valuation& v, const typename B::Elem& x) {
  ExtValue e = eval(b, v, x);
  return e.is_infinite() || e.finite() >= value_zero(v);
}

template <class B>
bool in_maximal_ideal(const B& b, const Valuation& v, const typename B::Elem& x) {
  ExtValue e = eval(b, v, x);
  return e.is_infinite() || e.finite() > value_zero(v);
}

template <class B>
bool is_valuation_unit(const B& b, const Valuation& v, const typename B::Elem& x) {
  ExtValue e = eval(b, v, x);
  return !e.is_infinite() && e.finite() == value_zero(v);
}

/// Every element of s has value strictly above the cut t (in the target group).
template <class B>
bool all_values_above(const B& b, const Valuation& v, const typename B::Set& s, const Cut& t) {
  SetShape sh = b.shape(s);
  for (const auto& val : sh.values) {
    if (!above_cut(t, v.map.apply(val))) return false;
  }
  if (sh.above && !cut_subset(v.map.preimage(t), *sh.above)) return false;
  return true;
}

/// Some element of s has value strictly above the cut t.
template <class B>
bool some_value_above(const B& b, const Valuation& v, const typename B::Set& s, const Cut& t) {
  SetShape sh = b.shape(s);
  if (sh.above) return true;  // contains 0
  return std::any_of(sh.values.begin(), sh.values.end(),
                     [&](const ExtValue& val) { return above_cut(t, v.map.apply(val)); });
}

template <class B>
bool meets_maximal_ideal(const B& b, const Valuation& v, const typename B::Set& s) {
  return some_value_above(b, v, s, Cut::at_most(value_zero(v)));
}

/// V1-V3, SURJ, and independently HH1-HH5 of v : F -> T(vF); AGREE compares both blocks.
template <class B>
ValidationReport is_valuation(const B& b, const Valuation& v) {
  WindowTables<B> t(b);
  const int n = t.size();
  ValidationReport r = window_report(b);
  r.subject = v.name + " on " + b.subject();
  r.window["value_map"] = v.map.str();
  std::vector<ExtValue> val(n);
  for (int i = 0; i < n; ++i) val[i] = eval(b, v, t.at(i));

  Verdict& v1 = r.add("V1");
  for (int i = 0; i < n; ++i) {
    ++v1.checked;
    if (val[i].is_infinite() != (t.at(i) == b.zero())) v1.fail({t.name(i)}, {i});
  }
  Verdict& v2 = r.add("V2");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ++v2.checked;
      if (eval(b, v, b.mul(t.at(i), t.at(j))) != val[i] + val[j]) v2.fail({t.name(i), t.name(j)}, {i, j});
    }
  }
  Verdict& v3 = r.add("V3");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const ExtValue m = ext_min(val[i], val[j]);
      for (int k = 0; k < n; ++k) {
        if (!b.contains(t.sum(i, j), t.at(k))) continue;
        ++v3.checked;
        if (val[k] < m) v3.fail({t.name(i), t.name(j), t.name(k)}, {i, j, k});
      }
    }
  }
  Verdict& surj = r.add("SURJ");
  {
    std::vector<ExtValue> image(val.begin(), val.end());
    std::sort(image.begin(), image.end());
    if constexpr (requires { b.value_window(); }) {
      for (const auto& g : b.value_window()) {
        ++surj.checked;
        const ExtValue target = v.map.apply(ExtValue(g));
        if (!std::binary_search(image.begin(), image.end(), target)) surj.fail({target.str()});
      }
    }
    ++surj.checked;
    if (!std::binary_search(image.begin(), image.end(), ExtValue(value_zero(v)))) surj.fail({"0"});
  }

  const bool v_block = v1.passed && v2.passed && v3.passed;
  bool hh_block = true;
  Verdict& hh1 = r.add("HH1");
  ++hh1.checked;
  if (!eval(b, v, b.zero()).is_infinite()) hh1.fail({b.name(b.zero())});
  Verdict& hh4 = r.add("HH4");
  ++hh4.checked;
  if (eval(b, v, b.one()) != ExtValue(value_zero(v))) hh4.fail({b.name(b.one())});
  Verdict& hh2 = r.add("HH2");
  Verdict& hh3 = r.add("HH3");
  Verdict& hh5 = r.add("HH5");
  for (int i = 0; i < n; ++i) {
    if (!(t.at(i) == b.zero())) {
      ++hh5.checked;
      ExtValue inv = eval(b, v, b.inv(t.at(i)));
      if (val[i].is_infinite() || inv != ExtValue(-val[i].finite())) hh5.fail({t.name(i)}, {i});
    }
    for (int j = 0; j < n; ++j) {
      ++hh2.checked;
      if (t_mul(val[i], val[j]) != eval(b, v, b.mul(t.at(i), t.at(j)))) hh2.fail({t.name(i), t.name(j)}, {i, j});
      const TropSet target = t_add(val[i], val[j], false);
      for (int k = 0; k < n; ++k) {
        if (!b.contains(t.sum(i, j), t.at(k))) continue;
        ++hh3.checked;
        if (!trop_contains(target, val[k])) hh3.fail({t.name(i), t.name(j), t.name(k)}, {i, j, k});
      }
    }
  }
  hh_block = hh1.passed && hh2.passed && hh3.passed && hh4.passed && hh5.passed;
  Verdict& agree = r.add("AGREE");
  ++agree.checked;
  if (v_block != hh_block) agree.fail({v_block ? "V holds" : "V fails", hh_block ? "HH holds" : "HH fails"});
  return r;
}

/// Remark-style description of the ring: x in O iff v(x) in v(1) [+] v(1).
template <class B>
bool ring_matches_unit_sum(const B& b, const Valuation& v) {
  const ExtValue one = eval(b, v, b.one());
  const TropSet s = t_add(one, one, false);
  for (const auto& x : b.window()) {
    if (in_valuation_ring(b, v, x) != trop_contains(s, eval(b, v, x))) return false;
  }
  return true;
}

/// Multiplicative closure, the x-or-inverse dichotomy and a - b contained in O.
template <class B>
ValidationReport is_valuation_hyperring(const B& b, const std::function<bool(const typename B::Elem&)>& in) {
  WindowTables<B> t(b);
  const int n = t.size();
  ValidationReport r = window_report(b);
  std::vector<char> mem(n);
  for (int i = 0; i < n; ++i) mem[i] = in(t.at(i));

  Verdict& base = r.add("ZERO_ONE");
  ++base.checked;
  if (!in(b.zero()) || !in(b.one())) base.fail({b.name(b.zero()), b.name(b.one())});
  Verdict& mul = r.add("MULCLOSED");
  Verdict& dich = r.add("DICHOTOMY");
  Verdict& sum = r.add("SUMCLOSED");
  for (int i = 0; i < n; ++i) {
    if (!(t.at(i) == b.zero())) {
      ++dich.checked;
      if (!mem[i] && !in(b.inv(t.at(i)))) dich.fail({t.name(i)}, {i});
    }
    if (!mem[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (!mem[j]) continue;
      ++mul.checked;
      if (!in(b.mul(t.at(i), t.at(j)))) mul.fail({t.name(i), t.name(j)}, {i, j});
      const auto d = t.diff(i, j);
      for (int k = 0; k < n; ++k) {
        if (!b.contains(d, t.at(k))) continue;
        ++sum.checked;
        if (!mem[k]) sum.fail({t.name(i), t.name(j), t.name(k)}, {i, j, k});
      }
    }
  }
  return r;
}

template <class B>
ValidationReport valuation_ring_report(const B& b, const Valuation& v) {
  return is_valuation_hyperring<B>(b, [&](const typename B::Elem& x) { return in_valuation_ring(b, v, x); });
}

/// Same valuation ring on the window.
template <class B>
bool equivalent(const B& b, const Valuation& v1, const Valuation& v2) {
  return std::all_of(b.window().begin(), b.window().end(), [&](const typename B::Elem& x) {
    return in_valuation_ring(b, v1, x) == in_valuation_ring(b, v2, x);
  });
}

/// First window element where the two rings differ, with its membership in the first.
template <class B>
std::optional<std::pair<typename B::Elem, bool>> ring_difference(const B& b, const Valuation& v1,
                                                                 const Valuation& v2) {
  for (const auto& x : b.window()) {
    const bool a = in_valuation_ring(b, v1, x);
    if (a != in_valuation_ring(b, v2, x)) return std::make_pair(x, a);
  }
  return std::nullopt;
}

template <class B>
struct Residue {
  FiniteHyperfield field;
  std::vector<typename B::Elem> reps;  // reps[0] = 0, reps[1] = 1
  ValidationReport validation;
};

inline constexpr std::size_t kResidueCap = 64;

/// O_v / M_v with (x+M) + (y+M) = {z+M | z in x+y}. Class representatives are
/// drawn from the window, so every residue class must meet it.
template <class B>
Residue<B> residue_hyperfield(const B& b, const Valuation& v) {
  using Elem = typename B::Elem;
  std::vector<Elem> reps{b.zero(), b.one()};
  auto same = [&](const Elem& x, const Elem& y) { return meets_maximal_ideal(b, v, b.add(x, b.neg(y))); };
  auto class_of = [&](const Elem& x) -> int {
    if (in_maximal_ideal(b, v, x)) return 0;
    for (std::size_t c = 1; c < reps.size(); ++c) {
      if (same(x, reps[c])) return static_cast<int>(c);
    }
    return -1;
  };
  for (const auto& x : b.window()) {
    if (!is_valuation_unit(b, v, x) || class_of(x) >= 0) continue;
    if (reps.size() == kResidueCap) throw UsageError("residue class count exceeds cap");
    reps.push_back(x);
  }
  const int n = static_cast<int>(reps.size());
  std::vector<std::string> names;
  for (const auto& x : reps) names.push_back("[" + b.name(x) + "]");
  std::vector<int> mul(static_cast<std::size_t>(n) * n);
  std::vector<Mask> add(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int c = class_of(b.mul(reps[i], reps[j]));
      if (c < 0) throw std::logic_error("residue class representative missing from window");
      mul[static_cast<std::size_t>(i) * n + j] = c;
      const auto s = b.add(reps[i], reps[j]);
      Mask cell = meets_maximal_ideal(b, v, s) ? bit(0) : 0;
      for (int k = 1; k < n; ++k) {
        if (meets_maximal_ideal(b, v, b.add(s, b.neg(reps[k])))) cell |= bit(k);
      }
      add[static_cast<std::size_t>(i) * n + j] = cell;
    }
  }
  Residue<B> out{FiniteHyperfield(names, mul, add, {{"name", "residue of " + b.subject()}, {"kind", "residue"}}),
                 reps, {}};
  out.validation = validate(out.field);
  return out;
}

/// KVH1 and KVH2 with norm rho (a cut of the target group containing 0).
template <class B>
ValidationReport check_krasner(const B& b, const Valuation& v, const Cut& rho) {
  if (rho.rank() != v.map.keep) throw UsageError("norm rank differs from value group rank");
  if (!cut_contains(rho, value_zero(v))) throw UsageError("norm must contain 0");
  WindowTables<B> t(b);
  const int n = t.size();
  ValidationReport r = window_report(b);
  r.subject = v.name + " on " + b.subject();
  r.window["norm"] = rho.str();
  std::vector<ExtValue> val(n);
  for (int i = 0; i < n; ++i) val[i] = eval(b, v, t.at(i));

  Verdict& k1 = r.add("KVH1");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& s = t.sum(i, j);
      if (b.contains(s, b.zero())) continue;
      ++k1.checked;
      SetShape sh = b.shape(s);
      std::vector<ExtValue> mapped;
      for (const auto& x : sh.values) mapped.push_back(v.map.apply(x));
      std::sort(mapped.begin(), mapped.end());
      mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
      if (sh.above || mapped.size() != 1) k1.fail({t.name(i), t.name(j)}, {i, j});
    }
  }

  Verdict& k2 = r.add("KVH2");
  std::map<std::pair<typename B::Set, ExtValue>, std::pair<int, int>> groups;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) groups.emplace(std::make_pair(t.sum(i, j), ext_min(val[i], val[j])), std::make_pair(i, j));
  }
  for (const auto& [key, pair] : groups) {
    const auto& [s, m] = key;
    const auto [i, j] = pair;
    std::optional<Cut> threshold;
    if (!m.is_infinite()) threshold = cut_shift(rho, m.finite());
    for (int z = 0; z < n; ++z) {
      if (!b.contains(s, t.at(z))) continue;
      for (int w = 0; w < n; ++w) {
        ++k2.checked;
        const bool lhs = b.contains(s, t.at(w));
        const bool rhs = threshold ? all_values_above(b, v, t.diff(z, w), *threshold) : t.at(w) == b.zero();
        if (lhs != rhs) k2.fail({t.name(i), t.name(j), t.name(z), t.name(w)}, {i, j, z, w});
      }
    }
  }
  return r;
}

/// d_v(x, y) = the unique value of v(x - y); refuses multivalued differences.
template <class B>
ExtValue distance(const B& b, const Valuation& v, const typename B::Elem& x, const typename B::Elem& y) {
  if (x == y) return ExtValue::infinity();
  SetShape sh = b.shape(b.add(x, b.neg(y)));
  std::vector<ExtValue> mapped;
  for (const auto& e : sh.values) mapped.push_back(v.map.apply(e));
  std::sort(mapped.begin(), mapped.end());
  mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
  if (sh.above || mapped.size() != 1) {
    throw UsageError("v(" + b.name(x) + " - " + b.name(y) + ") is not a single value");
  }
  return mapped.front();
}

/// U1-U3, the hypersum-ball identity x + y = B(z) and comparability of balls.
template <class B>
ValidationReport check_ultrametric(const B& b, const Valuation& v, const Cut& rho) {
  WindowTables<B> t(b);
  const int n = t.size();
  ValidationReport r = window_report(b);
  r.subject = "d_" + v.name + " on " + b.subject();
  r.window["norm"] = rho.str();
  std::vector<ExtValue> d(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[static_cast<std::size_t>(i) * n + j] = distance(b, v, t.at(i), t.at(j));
  }
  auto dist = [&](int i, int j) -> const ExtValue& { return d[static_cast<std::size_t>(i) * n + j]; };

  Verdict& u1 = r.add("U1");
  Verdict& u2 = r.add("U2");
  Verdict& u3 = r.add("U3");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ++u1.checked;
      if (dist(i, j).is_infinite() != (i == j)) u1.fail({t.name(i), t.name(j)}, {i, j});
      ++u2.checked;
      if (dist(i, j) != dist(j, i)) u2.fail({t.name(i), t.name(j)}, {i, j});
      for (int k = 0; k < n; ++k) {
        ++u3.checked;
        if (dist(i, k) < ext_min(dist(i, j), dist(j, k))) u3.fail({t.name(i), t.name(j), t.name(k)}, {i, j, k});
      }
    }
  }

  Verdict& ball = r.add("BALL");
  std::map<std::pair<typename B::Set, ExtValue>, std::pair<int, int>> groups;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      groups.emplace(std::make_pair(t.sum(i, j), ext_min(eval(b, v, t.at(i)), eval(b, v, t.at(j)))),
                     std::make_pair(i, j));
    }
  }
  for (const auto& [key, pair] : groups) {
    const auto& [s, m] = key;
    if (m.is_infinite()) continue;
    const Cut threshold = cut_shift(rho, m.finite());
    for (int z = 0; z < n; ++z) {
      if (!b.contains(s, t.at(z))) continue;
      for (int w = 0; w < n; ++w) {
        ++ball.checked;
        if (b.contains(s, t.at(w)) != above_cut(threshold, dist(z, w))) {
          ball.fail({t.name(pair.first), t.name(pair.second), t.name(z), t.name(w)}, {pair.first, pair.second, z, w});
        }
      }
    }
  }

  // closed balls {y | d(z, y) > rho + g} for every centre and every window value g
  Verdict& nest = r.add("NESTED");
  std::vector<GroupElem> radii;
  for (int i = 0; i < n; ++i) {
    const ExtValue e = eval(b, v, t.at(i));
    if (!e.is_infinite()) radii.push_back(e.finite());
  }
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::vector<std::vector<char>> balls;
  std::vector<std::string> labels;
  for (int z = 0; z < n; ++z) {
    for (const auto& g : radii) {
      const Cut c = cut_shift(rho, g);
      std::vector<char> m(n);
      for (int w = 0; w < n; ++w) m[w] = above_cut(c, dist(z, w));
      balls.push_back(std::move(m));
      labels.push_back("B(" + t.name(z) + "," + g.str() + ")");
    }
  }
  std::sort(balls.begin(), balls.end());
  balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
  for (std::size_t a = 0; a < balls.size(); ++a) {
    for (std::size_t c = a + 1; c < balls.size(); ++c) {
      ++nest.checked;
      bool meet = false, ac = true, ca = true;
      for (int w = 0; w < n; ++w) {
        meet |= balls[a][w] && balls[c][w];
        ac &= !balls[a][w] || balls[c][w];
        ca &= !balls[c][w] || balls[a][w];
      }
      if (meet && !ac && !ca) nest.fail({"ball " + std::to_string(a), "ball " + std::to_string(c)});
    }
  }
  return r;
}

/// x - x contained in 1 - 1.
template <class B>
bool in_induced_ring(const B& b, const typename B::Elem& x) {
  return b.subset(b.add(x, b.neg(x)), b.add(b.one(), b.neg(b.one())));
}

/// Complement in vF of v(1 - 1).
template <class B>
Cut induced_norm(const B& b, const Valuation& v) {
  SetShape sh = b.shape(b.add(b.one(), b.neg(b.one())));
  if (sh.above) return *sh.above;
  std::optional<GroupElem> least;
  for (const auto& e : sh.values) {
    const ExtValue m = v.map.apply(e);
    if (!m.is_infinite() && (!least || m.finite() < *least)) least = m.finite();
  }
  if (least) return Cut::below(*least);
  return Cut::all(v.map.keep);
}

inline Valuation coarsening(const Valuation& v, const ConvexSubgroup& delta) {
  if (delta.rank != v.map.keep) throw UsageError("convex subgroup rank differs from value group rank");
  return {v.name + "_Delta", ValueMap::projection(delta.rank, delta.suffix_index).after(v.map)};
}

/// O of the coarsening by ig(rho) equals the induced ring; with trivial ig(rho)
/// also O_v itself (TRIVIAL_IG_RING).
template <class B>
ValidationReport check_coarsening_theorem(const B& b, const Valuation& v, const Cut& rho) {
  ValidationReport r = window_report(b);
  r.subject = v.name + " on " + b.subject();
  const ConvexSubgroup delta = invariance_group(rho);
  r.window["norm"] = rho.str();
  r.window["invariance_group"] = delta.str();
  const Valuation w = coarsening(v, delta);
  Verdict& co = r.add("COARSENING");
  for (const auto& x : b.window()) {
    ++co.checked;
    if (in_valuation_ring(b, w, x) != in_induced_ring(b, x)) co.fail({b.name(x)});
  }
  if (delta == ConvexSubgroup::trivial(delta.rank)) {
    Verdict& m = r.add("TRIVIAL_IG_RING");
    for (const auto& x : b.window()) {
      ++m.checked;
      if (in_valuation_ring(b, v, x) != in_induced_ring(b, x)) m.fail({b.name(x)});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Finite backends

/// Ordered coset group F^x / O^x with aO^x <= bO^x iff b a^-1 in O.
struct CanonicalValuation {
  std::vector<Mask> cosets;   // of F^x, coset of 1 first
  std::vector<int> coset_of;  // per element, -1 for 0
  ValidationReport report;    // TOTAL, ANTISYM, COMPAT, RING
};

CanonicalValuation canonical_valuation_from_ring(const FiniteHyperfield& f, Mask ring);
/// Subsets O (containing 0 and 1) that pass the valuation hyperring test.
std::vector<Mask> valuation_hyperrings(const FiniteHyperfield& f);
Mask ring_mask(const FiniteBackend& b, const Valuation& v);
Mask maximal_ideal_mask(const FiniteBackend& b, const Valuation& v);
Mask units_mask(const FiniteBackend& b, const Valuation& v);
/// M_v is a hyperideal of O_v and the unique maximal proper one.
bool check_maximal_ideal(const FiniteBackend& b, const Valuation& v);

// ---------------------------------------------------------------------------
// Leading-term backends

struct ResidueEmbedding {
  bool embedding = false;
  std::vector<LTElement> image;  // image of each residue class
  ValidationReport report;       // WELLDEF, HH1-HH5, EM1
};

/// [xv] -> [x] from the residue field into K_gamma, with constant representatives.
ResidueEmbedding residue_embedding_check(const LTHyperfield& b);

}  // namespace hyperval
