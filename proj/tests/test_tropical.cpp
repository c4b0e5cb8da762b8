#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperval/tropical.hpp"
#include "hyperval/window.hpp"

using namespace hyperval;

namespace {

// Membership straight from the definition: the minimum when x != y, otherwise
// everything at or (strictly) above x.
bool oracle_member(const TropElem& x, const TropElem& y, const TropElem& z, bool strict) {
  if (x != y) return z == ext_min(x, y);
  if (x.is_infinite()) return z.is_infinite();
  return strict ? x < z : x <= z;
}

}  // namespace

TEST_CASE("hypersum agrees with the defining rule") {
  for (std::size_t rank : {1u, 2u}) {
    for (bool strict : {false, true}) {
      const TropicalHyperfield t(rank, strict, 2);
      for (const auto& x : t.window()) {
        for (const auto& y : t.window()) {
          const TropSet s = t.add(x, y);
          for (const auto& z : t.window()) CHECK(trop_contains(s, z) == oracle_member(x, y, z, strict));
        }
      }
    }
  }
}

TEST_CASE("strict rays are half-open") {
  const TropSet s = t_add(GroupElem{3}, GroupElem{3}, true);
  CHECK(s.str() == "(3,inf]");
  CHECK(s == TropSet::ray(GroupElem{4}, true));
  CHECK_FALSE(trop_contains(s, GroupElem{3}));
  const TropSet r = t_add(GroupElem{0, 5}, GroupElem{0, 5}, true);
  CHECK(trop_contains(r, GroupElem{0, 6}));
  CHECK(trop_contains(r, GroupElem{1, -9}));
}

TEST_CASE("axiom suites at bound 3") {
  CHECK(tropical_axiom_suite(1, false).passed());
  CHECK(tropical_axiom_suite(1, true).passed());
  CHECK(tropical_axiom_suite(2, false).passed());
}

TEST_CASE("classification on a window") {
  const auto t = classify_window(TropicalHyperfield(1, false, 3));
  CHECK(t.char2);
  CHECK(t.cchar1);
  CHECK(t.stringent);
  CHECK_FALSE(t.superiorly_canonical);
  const auto ts = classify_window(TropicalHyperfield(1, true, 3));
  CHECK_FALSE(ts.cchar1);
  CHECK(ts.superiorly_canonical);
}

TEST_CASE("projection to the quotient by a convex subgroup") {
  for (std::size_t k : {0u, 1u, 2u}) CHECK(check_pi_delta(2, ConvexSubgroup{k, 2}, 2).passed());
  const ConvexSubgroup d{1, 2};
  CHECK(pi_delta(GroupElem{2, -5}, d) == ExtValue(GroupElem{2}));
  CHECK(pi_delta(ExtValue::infinity(), d).is_infinite());
  for (const auto& g : group_window(2, 2)) {
    CHECK(valuation_ring_of_pi_delta(g, d) == valuation_ring_via_unit_sum(g, d));
    CHECK(valuation_ring_of_pi_delta(g, d) == (g[0] >= 0));
  }
}

TEST_CASE("the subset {inf, 0}") {
  const auto k = tropical_unit_subhyperfield(1, false);
  CHECK(validate(k).passed());
  CHECK(find_isomorphism(k, build_K()).has_value());
  CHECK_FALSE(tropical_unit_subset_closed(1, false));
}

TEST_CASE("names") {
  CHECK(trop_name(ExtValue::infinity()) == "inf");
  CHECK(trop_name(GroupElem{-2}) == "-2");
  CHECK(trop_to_json(GroupElem{1, 2}) == nlohmann::json::array({1, 2}));
}
