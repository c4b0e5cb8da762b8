#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hyperval/errors.hpp"
#include "hyperval/oag.hpp"

using namespace hyperval;

namespace {

std::vector<Cut> sample_cuts(std::size_t n) {
  std::vector<Cut> out{Cut::all(n), Cut::empty(n)};
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& b : group_window(k, 1)) {
      out.emplace_back(n, k, b, true);
      out.emplace_back(n, k, b, false);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("lex order matches vector comparison") {
  const auto w = group_window(3, 2);
  for (const auto& a : w) {
    for (const auto& b : w) {
      const bool lt = a.coords() < b.coords();
      CHECK((a < b) == lt);
      CHECK((lex_compare(a, b) == Ordering::LT) == lt);
    }
  }
  CHECK_THROWS_AS(lex_compare(GroupElem{1}, GroupElem{1, 0}), UsageError);
}

TEST_CASE("infinity sits above the group") {
  const ExtValue inf = ExtValue::infinity();
  CHECK(ExtValue(GroupElem{100}) < inf);
  CHECK(ext_min(inf, GroupElem{-3}) == ExtValue(GroupElem{-3}));
  CHECK((inf + GroupElem{2}).is_infinite());
  CHECK(inf.str() == "inf");
}

TEST_CASE("cut operations agree with membership on a window") {
  for (std::size_t n : {1u, 2u}) {
    const auto w = group_window(n, 3);
    const auto cuts = sample_cuts(n);
    for (const auto& a : cuts) {
      const Cut na = a.normalized();
      for (const auto& g : w) CHECK(cut_contains(a, g) == cut_contains(na, g));
      for (const auto& b : cuts) {
        bool sub = true;
        for (const auto& g : w) sub &= !cut_contains(a, g) || cut_contains(b, g);
        CHECK(cut_subset(a, b) == sub);
      }
      for (const auto& s : group_window(n, 1)) {
        const Cut sh = cut_shift(a, s);
        for (const auto& g : group_window(n, 2)) CHECK(cut_contains(sh, g) == cut_contains(a, g - s));
      }
    }
  }
}

TEST_CASE("invariance group is the stabilizer of the cut") {
  for (std::size_t n : {1u, 2u, 3u}) {
    for (const auto& rho : sample_cuts(n)) {
      const ConvexSubgroup ig = invariance_group(rho);
      for (const auto& g : group_window(n, 1)) {
        bool stable = true;
        for (const auto& m : group_window(n, 3)) stable &= cut_contains(rho, m) == cut_contains(rho, m + g);
        CHECK(ig.contains(g) == stable);
      }
    }
  }
  CHECK(invariance_group(Cut(2, 1, GroupElem{0}, true)) == ConvexSubgroup{1, 2});
  CHECK(invariance_group(Cut::at_most(GroupElem{0})) == ConvexSubgroup::trivial(1));
  CHECK(invariance_group(Cut::all(2)) == ConvexSubgroup::whole(2));
}

TEST_CASE("convex subgroups of Z^n are exactly the suffix subgroups") {
  for (std::size_t n : {1u, 2u}) {
    for (std::size_t k = 0; k <= n; ++k) {
      const ConvexSubgroup d{k, n};
      CHECK(is_convex_on_window([&](const GroupElem& g) { return d.contains(g); }, n, 2));
    }
  }
  // The diagonal of Z^2 is a subgroup but not convex.
  CHECK_FALSE(is_convex_on_window([](const GroupElem& g) { return g[0] == g[1]; }, 2, 2));
}

TEST_CASE("value maps preserve order and pull back cuts") {
  const ValueMap pr = ValueMap::projection(2, 1);
  const auto w = group_window(2, 2);
  for (const auto& a : w) {
    for (const auto& b : w) {
      if (a <= b) CHECK(pr.apply(a) <= pr.apply(b));
      CHECK(pr.apply(a + b) == pr.apply(a) + pr.apply(b));
    }
  }
  const Cut rho = Cut::at_most(GroupElem{0});
  const Cut pre = pr.preimage(rho);
  for (const auto& g : w) CHECK(cut_contains(pre, g) == cut_contains(rho, pr.apply(g)));
  CHECK(quotient_by_convex(GroupElem{3, -7}, ConvexSubgroup{1, 2}) == GroupElem{3});
  CHECK(pr.apply(ExtValue::infinity()).is_infinite());
}
