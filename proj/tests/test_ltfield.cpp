#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperval/ltfield.hpp"
#include "hyperval/window.hpp"
#include "oracles.hpp"

using namespace hyperval;

namespace {

std::vector<LTElement> with_zero(const LTHyperfield& b) {
  std::vector<LTElement> w = b.window();
  if (std::find(w.begin(), w.end(), lt_zero()) == w.end()) w.push_back(lt_zero());
  return w;
}

std::size_t lt_mismatches(const LTHyperfield& b) {
  std::size_t bad = 0;
  const auto w = with_zero(b);
  for (const auto& x : w) {
    for (const auto& y : w) {
      const auto expect = oracle::lt_sum(b.context(), b.bound(), x, y);
      const LTSet s = b.add(x, y);
      for (const auto& z : w) bad += b.contains(s, z) != (expect.count(z) > 0);
    }
  }
  return bad;
}

}  // namespace

TEST_CASE("window sizes") {
  CHECK(enumerate_window(make_lt_context(2, 0), 1).size() == 4);
  CHECK(enumerate_window(make_lt_context(3, 1), 0).size() == 7);
  CHECK(enumerate_window(make_lt_context(3, 2), 2).size() == 91);
  CHECK(enumerate_window(make_lt_context_full_units(3, 1), 1).size() == 10);
  CHECK_THROWS_AS(enumerate_window(make_lt_context(3, 8), 4), UsageError);
}

TEST_CASE("element arithmetic") {
  const auto ctx = make_lt_context(3, 1);
  const auto x = lt_make(ctx, 0, {1, 2});
  const auto y = lt_make(ctx, 1, {2, 1});
  REQUIRE(oracle::prime_field_matches(ctx));
  CHECK(lt_name(ctx, lt_mul(ctx, x, y)) == "(1;2,2)");
  CHECK(lt_name(ctx, lt_neg(ctx, x)) == "(0;2,1)");
  CHECK(lt_mul(ctx, x, lt_inv(ctx, x)) == lt_make(ctx, 0, {1, 0}));
  CHECK(lt_name(ctx, lt_make(ctx, 0, {1, 2})) == "(0;1,2)");
  CHECK_THROWS_AS(lt_make(ctx, 0, {0, 1}), UsageError);
}

TEST_CASE("multiplication agrees with lifted products") {
  for (int q : {2, 3}) {
    for (int g : {0, 1, 2}) {
      const LTHyperfield b(make_lt_context(q, g), 1);
      for (const auto& x : b.window()) {
        for (const auto& y : b.window()) CHECK(b.mul(x, y) == oracle::lt_product(b.context(), x, y));
      }
    }
  }
}

TEST_CASE("hypersums agree with the polynomial-lift oracle") {
  for (int q : {2, 3}) {
    for (int g : {0, 1, 2}) {
      CAPTURE(q);
      CAPTURE(g);
      const LTHyperfield b(make_lt_context(q, g), 2);
      REQUIRE(oracle::prime_field_matches(b.context()));
      CHECK(lt_mismatches(b) == 0);
    }
  }
  // Also with the scalar subgroup S = F_3^x.
  CHECK(lt_mismatches(LTHyperfield(make_lt_context_full_units(3, 1), 1)) == 0);
}

TEST_CASE("set forms") {
  const auto ctx = make_lt_context(3, 1);
  const auto x = lt_make(ctx, 0, {1, 2});
  const LTSet self = lt_add(ctx, x, lt_neg(ctx, x));
  CHECK(lt_set_name(ctx, self).find("v>=2") != std::string::npos);
  CHECK(lt_contains(ctx, self, lt_zero()));
  const LTSet fin = lt_add(ctx, x, lt_make(ctx, 0, {2, 0}));
  CHECK(lt_set_to_json(ctx, fin)["kind"] == "finite");
  CHECK(lt_set_to_json(ctx, fin)["size"] == 3);
  CHECK(lt_is_singleton(ctx, lt_add(ctx, x, lt_make(ctx, 1, {1, 1}))));
  CHECK(lt_subset(ctx, fin, lt_add(ctx, fin, lt_zero())));
}

TEST_CASE("axioms and canonicity on windows") {
  for (int q : {2, 3}) {
    for (int g : {0, 1}) {
      const LTHyperfield b(make_lt_context(q, g), 2);
      CHECK(check_hyperfield_axioms(b).passed());
      CHECK(check_sch(b).passed());
    }
  }
  const LTHyperfield nk(make_lt_context_full_units(3, 1), 2);
  CHECK(check_hyperfield_axioms(nk).passed());
  CHECK_FALSE(check_sch(nk).passed("SCH1"));
}

TEST_CASE("composite arithmetic") {
  const auto x = comp_make(0, "1/2");
  const auto y = comp_make(1, "-3");
  CHECK(comp_name(comp_mul(x, y)) == "(1;-3/2)");
  CHECK(comp_mul(x, comp_inv(x)) == comp_make(0, mpq_class(1)));
  CHECK(ord_p(mpq_class(12, 5), 2) == 2);
  CHECK(ord_p(mpq_class(1, 8), 2) == -3);
  CHECK(comp_valuation({2}, x) == ExtValue(GroupElem{0, -1}));
  CHECK(comp_add(x, comp_neg(x)) == CompSet::above_n(0));
  CHECK_THROWS_AS(comp_make(0, "1/0"), UsageError);
}

TEST_CASE("composite hypersums agree with rational lifts") {
  const std::int64_t bound = 2, rb = 3;
  const CompositeHyperfield b({2}, bound, rb);
  std::vector<mpq_class> coeffs;
  for (const auto& e : b.window()) {
    if (!e.zero && e.n == 0) coeffs.push_back(e.c);
  }
  std::vector<mpq_class> ratios;
  for (const auto& a : coeffs) {
    for (const auto& c : coeffs) ratios.push_back(a / c);
  }
  std::size_t bad = 0;
  for (const auto& x : b.window()) {
    for (const auto& y : b.window()) {
      const auto found = oracle::comp_sum(x, y, ratios, 2 * bound);
      const CompSet s = b.add(x, y);
      for (const auto& f : found) bad += !comp_contains(s, f);
      for (const auto& z : b.window()) bad += comp_contains(s, z) && !found.count(z);
    }
  }
  CHECK(bad == 0);
  CHECK(check_hyperfield_axioms(b).passed());
}
