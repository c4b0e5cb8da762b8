#include "hyperval/tropical.hpp"

#include <algorithm>

namespace hyperval {

TropSet TropSet::point(TropElem x) {
  TropSet s;
  s.at_ = std::move(x);
  return s;
}

TropSet TropSet::ray(GroupElem bound, bool inclusive) {
  TropSet s;
  s.at_ = ExtValue(std::move(bound));
  s.is_ray_ = true;
  s.inclusive_ = inclusive;
  return s;
}

GroupElem TropSet::min_member() const {
  GroupElem b = at_.finite();
  if (!inclusive_) {
    if (b.rank() == 0) throw UsageError("strict ray over the trivial group is {inf}");
    b[b.rank() - 1] += 1;  // successor in Z^n lex
  }
  return b;
}

bool TropSet::operator==(const TropSet& o) const {
  if (is_ray_ != o.is_ray_) return false;
  if (!is_ray_) return at_ == o.at_;
  return min_member() == o.min_member();
}

bool TropSet::operator<(const TropSet& o) const {
  if (is_ray_ != o.is_ray_) return !is_ray_;
  if (!is_ray_) return at_ < o.at_;
  return min_member() < o.min_member();
}

std::string TropSet::str() const {
  if (!is_ray_) return "{" + trop_name(at_) + "}";
  return std::string(inclusive_ ? "[" : "(") + trop_name(at_) + ",inf]";
}

nlohmann::json TropSet::to_json() const {
  if (!is_ray_) return nlohmann::json{{"point", trop_to_json(at_)}};
  return nlohmann::json{{"bound", at_.finite().coords()}, {"inclusive", inclusive_}};
}

std::string trop_name(const TropElem& x) {
  if (x.is_infinite()) return "inf";
  const GroupElem& g = x.finite();
  if (g.rank() == 1) return std::to_string(g[0]);
  return g.str();
}

nlohmann::json trop_to_json(const TropElem& x) {
  if (x.is_infinite()) return nullptr;
  return x.finite().coords();
}

bool trop_contains(const TropSet& s, const TropElem& x) {
  if (s.is_point()) return s.point_value() == x;
  if (x.is_infinite()) return true;
  switch (lex_compare(x.finite(), s.bound())) {
    case Ordering::GT: return true;
    case Ordering::EQ: return s.inclusive();
    case Ordering::LT: return false;
  }
  return false;
}

bool trop_subset(const TropSet& a, const TropSet& b) {
  if (a.is_point()) return trop_contains(b, a.point_value());
  if (b.is_point()) return false;
  // a's least member lies in b
  GroupElem lo = a.bound();
  if (!a.inclusive()) lo[lo.rank() - 1] += 1;
  return trop_contains(b, ExtValue(lo));
}

TropSet t_add(const TropElem& x, const TropElem& y, bool strict) {
  if (x != y) return TropSet::point(ext_min(x, y));
  if (x.is_infinite()) return TropSet::point(x);
  if (strict && x.finite().rank() == 0) return TropSet::point(ExtValue::infinity());
  return TropSet::ray(x.finite(), !strict);
}

TropElem t_mul(const TropElem& x, const TropElem& y) { return x + y; }

TropicalHyperfield::TropicalHyperfield(std::size_t rank, bool strict, std::int64_t bound)
    : rank_(rank), strict_(strict), bound_(bound) {
  window_.push_back(ExtValue::infinity());
  for (auto& g : group_window(rank, bound)) window_.emplace_back(g);
}

TropSet TropicalHyperfield::add(const TropSet& s, const TropElem& z) const {
  if (s.is_point()) return t_add(s.point_value(), z, strict_);
  if (trop_contains(s, z)) return s;
  return TropSet::point(z);
}

TropSet TropicalHyperfield::scale(const TropSet& s, const TropElem& x) const {
  if (x.is_infinite()) return TropSet::point(x);
  if (s.is_point()) return TropSet::point(s.point_value() + x);
  return TropSet::ray(s.bound() + x.finite(), s.inclusive());
}

TropElem TropicalHyperfield::inv(const TropElem& x) const {
  if (x.is_infinite()) throw UsageError("infinity has no inverse");
  return ExtValue(-x.finite());
}

bool TropicalHyperfield::intersects(const TropSet& a, const TropSet& b) const {
  if (a.is_point()) return trop_contains(b, a.point_value());
  if (b.is_point()) return trop_contains(a, b.point_value());
  return true;  // both contain infinity
}

SetShape TropicalHyperfield::shape(const TropSet& s) const {
  SetShape out;
  if (s.is_point()) {
    out.values.push_back(s.point_value());
  } else {
    out.above = s.inclusive() ? Cut::below(s.bound()) : Cut::at_most(s.bound());
  }
  return out;
}

std::string TropicalHyperfield::subject() const {
  return std::string(strict_ ? "T'" : "T") + "(Z^" + std::to_string(rank_) + ")";
}

nlohmann::json TropicalHyperfield::window_params() const {
  return {{"backend", subject()}, {"rank", rank_}, {"bound", bound_}};
}

ValidationReport tropical_axiom_suite(std::size_t rank, bool strict, std::int64_t bound) {
  return check_hyperfield_axioms(TropicalHyperfield(rank, strict, bound));
}

TropElem pi_delta(const TropElem& x, const ConvexSubgroup& delta) {
  if (x.is_infinite()) return x;
  return ExtValue(quotient_by_convex(x.finite(), delta));
}

ValidationReport check_pi_delta(std::size_t rank, const ConvexSubgroup& delta, std::int64_t bound) {
  if (delta.rank != rank) throw UsageError("convex subgroup rank differs from group rank");
  TropicalHyperfield src(rank, false, bound);
  TropicalHyperfield dst(delta.suffix_index, false, bound);
  ValidationReport r = window_report(src);
  r.subject = "pi_Delta on " + src.subject() + " with Delta = " + delta.str();
  auto pi = [&](const TropElem& x) { return pi_delta(x, delta); };
  const auto& w = src.window();

  Verdict& hh1 = r.add("HH1");
  ++hh1.checked;
  if (!pi(src.zero()).is_infinite()) hh1.fail({"inf"});
  Verdict& hh4 = r.add("HH4");
  ++hh4.checked;
  if (pi(src.one()) != dst.one()) hh4.fail({"0"});
  Verdict& hh2 = r.add("HH2");
  Verdict& hh3 = r.add("HH3");
  Verdict& hh5 = r.add("HH5");
  for (const auto& x : w) {
    if (!x.is_infinite()) {
      ++hh5.checked;
      if (pi(src.inv(x)) != dst.inv(pi(x))) hh5.fail({trop_name(x)});
    }
    for (const auto& y : w) {
      ++hh2.checked;
      if (pi(t_mul(x, y)) != t_mul(pi(x), pi(y))) hh2.fail({trop_name(x), trop_name(y)});
      TropSet target = t_add(pi(x), pi(y), false);
      TropSet sum = t_add(x, y, false);
      for (const auto& z : w) {
        if (!trop_contains(sum, z)) continue;
        ++hh3.checked;
        if (!trop_contains(target, pi(z))) hh3.fail({trop_name(x), trop_name(y), trop_name(z)});
      }
    }
  }
  Verdict& surj = r.add("SURJ");
  std::vector<TropElem> image;
  for (const auto& x : w) image.push_back(pi(x));
  for (const auto& target : dst.window()) {
    ++surj.checked;
    if (std::find(image.begin(), image.end(), target) == image.end()) surj.fail({trop_name(target)});
  }
  return r;
}

bool valuation_ring_of_pi_delta(const TropElem& x, const ConvexSubgroup& delta) {
  if (x.is_infinite()) return true;
  if (delta.contains(x.finite())) return true;
  // above Delta: the first coordinate outside Delta's support is positive
  GroupElem q = quotient_by_convex(x.finite(), delta);
  return q > GroupElem::zero(q.rank());
}

bool valuation_ring_via_unit_sum(const TropElem& x, const ConvexSubgroup& delta) {
  const TropElem unit = GroupElem::zero(delta.suffix_index);
  return trop_contains(t_add(unit, unit, false), pi_delta(x, delta));
}

FiniteHyperfield tropical_unit_subhyperfield(std::size_t rank, bool strict) {
  const std::vector<TropElem> carrier{ExtValue::infinity(), GroupElem::zero(rank)};
  std::vector<int> mul(4);
  std::vector<Mask> add(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      TropElem p = t_mul(carrier[i], carrier[j]);
      mul[i * 2 + j] = p.is_infinite() ? 0 : 1;
      TropSet s = t_add(carrier[i], carrier[j], strict);
      Mask cell = 0;
      for (int k = 0; k < 2; ++k) {
        if (trop_contains(s, carrier[k])) cell |= bit(k);
      }
      add[i * 2 + j] = cell;
    }
  }
  return FiniteHyperfield({"inf", "0"}, mul, add,
                          {{"name", std::string(strict ? "T'" : "T") + " unit subset"}, {"kind", "induced"}});
}

bool tropical_unit_subset_closed(std::size_t rank, bool strict) {
  TropicalHyperfield t(rank, strict, 1);
  const std::vector<TropElem> carrier{ExtValue::infinity(), GroupElem::zero(rank)};
  for (const auto& x : carrier) {
    for (const auto& y : carrier) {
      TropSet s = t_add(x, y, strict);
      // closed iff every window member of s is in the subset
      for (const auto& z : t.window()) {
        if (trop_contains(s, z) && z != carrier[0] && z != carrier[1]) return false;
      }
    }
  }
  return true;
}

}  // namespace hyperval
