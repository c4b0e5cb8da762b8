#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hyperval/valn.hpp"

using namespace hyperval;

TEST_CASE("finite hyperfields carry only the trivial valuation") {
  // A finite unit group is torsion, so any order-preserving image in Z is 0.
  for (int n : {2, 3, 4}) {
    for (const auto& f : enumerate_hyperfields(n)) {
      const auto rings = valuation_hyperrings(f);
      REQUIRE(rings.size() == 1);
      CHECK(rings.front() == f.carrier());
    }
  }
  CHECK(valuation_hyperrings(build_finite_field(5)).size() == 1);
  const auto cv = canonical_valuation_from_ring(build_finite_field(7), build_finite_field(7).carrier());
  CHECK(cv.report.passed());
  CHECK(cv.cosets.size() == 1);
}

TEST_CASE("trivial valuation on W") {
  const FiniteBackend w(build_W());
  const auto v = Valuation::intrinsic(1);
  CHECK(is_valuation(w, v).passed());
  CHECK(check_maximal_ideal(w, v));
  CHECK(maximal_ideal_mask(w, v) == bit(0));
  const auto res = residue_hyperfield(w, v);
  CHECK(find_isomorphism(res.field, build_W()).has_value());
  CHECK_FALSE(check_sch(w).passed("SCH1"));
}

TEST_CASE("a broken value table fails V2") {
  const FiniteHyperfield w = build_W();
  std::vector<ExtValue> values(w.size(), GroupElem{0});
  values[0] = ExtValue::infinity();
  values[w.neg(1)] = GroupElem{1};  // v(-1) != v(1)
  const FiniteBackend b(w, values);
  const auto r = is_valuation(b, Valuation::intrinsic(1));
  CHECK_FALSE(r.passed("V2"));
  CHECK_THROWS_AS(FiniteBackend(w, {ExtValue::infinity()}), UsageError);
}

TEST_CASE("K with the trivial valuation is not Krasner") {
  const FiniteBackend k(build_K());
  const auto r = check_krasner(k, Valuation::intrinsic(1), Cut::at_most(GroupElem{0}));
  CHECK(r.passed("KVH1"));
  CHECK_FALSE(r.passed("KVH2"));
  CHECK(r.mode == std::string(kExhaustive));
}

TEST_CASE("leading-term backends") {
  for (int q : {2, 3}) {
    for (int g : {0, 1, 2}) {
      CAPTURE(q);
      CAPTURE(g);
      const LTHyperfield b(make_lt_context(q, g), 2);
      const auto v = Valuation::intrinsic(1);
      const Cut rho = lt_norm(b.context());
      CHECK(is_valuation(b, v).passed());
      CHECK(check_krasner(b, v, rho).passed());
      CHECK(check_ultrametric(b, v, rho).passed());
      CHECK(induced_norm(b, v) == rho);
      const auto res = residue_hyperfield(b, v);
      CHECK(res.field.size() == static_cast<std::size_t>(q));
      CHECK(is_field(res.field));
      CHECK(ring_matches_unit_sum(b, v));
      CHECK(valuation_ring_report(b, v).passed());
    }
  }
}

TEST_CASE("residue embedding holds exactly when gamma is 0") {
  for (int q : {2, 3}) {
    CHECK(residue_embedding_check(LTHyperfield(make_lt_context(q, 0), 2)).embedding);
    const auto e = residue_embedding_check(LTHyperfield(make_lt_context(q, 1), 2));
    CHECK_FALSE(e.embedding);
    CHECK_FALSE(e.report.passed("WELLDEF"));
  }
}

TEST_CASE("full unit quotient") {
  const LTHyperfield b(make_lt_context_full_units(3, 1), 2);
  const auto v = Valuation::intrinsic(1);
  CHECK(is_valuation(b, v).passed());
  const auto res = residue_hyperfield(b, v);
  CHECK(find_isomorphism(res.field, build_K()).has_value());
  for (std::int64_t m = 0; m <= 4; ++m) CHECK_FALSE(check_krasner(b, v, Cut::at_most(GroupElem{m})).passed());
  CHECK_FALSE(check_krasner(b, v, Cut::all(1)).passed());
}

TEST_CASE("tropical valuations") {
  const auto id = Valuation::intrinsic(1, "id");
  const TropicalHyperfield t(1, false, 3);
  CHECK(is_valuation(t, id).passed());
  CHECK_FALSE(check_krasner(t, id, Cut::at_most(GroupElem{0})).passed("KVH2"));
  const TropicalHyperfield ts(1, true, 3);
  CHECK(check_krasner(ts, id, Cut::at_most(GroupElem{0})).passed());
  const TropicalHyperfield t2(2, false, 2);
  const Valuation w{"w", ValueMap::projection(2, 1)};
  CHECK(is_valuation(t2, w).passed());
}

TEST_CASE("composite backend") {
  const CompositeHyperfield b({2}, 3, 4);
  const auto w = Valuation::intrinsic(2, "w");
  const Valuation u{"u", ValueMap::projection(2, 1)};
  CHECK(is_valuation(b, w).passed());
  CHECK(is_valuation(b, u).passed());
  CHECK_FALSE(equivalent(b, w, u));
  const auto x = comp_make(0, mpq_class(1, 2));
  CHECK(in_valuation_ring(b, u, x));
  CHECK_FALSE(in_valuation_ring(b, w, x));
  CHECK(in_induced_ring(b, x));
  CHECK_FALSE(in_induced_ring(b, comp_make(-1, mpq_class(1))));
  CHECK(check_krasner(b, w, comp_norm()).passed());
  CHECK(induced_norm(b, w) == comp_norm());
  CHECK(invariance_group(comp_norm()) == ConvexSubgroup{1, 2});
  const auto r = check_coarsening_theorem(b, w, comp_norm());
  CHECK(r.passed());
  CHECK(r.mode == std::string(kBounded));
  const auto res = residue_hyperfield(b, w);
  CHECK(res.field.size() == 2);
  CHECK(is_field(res.field));
  CHECK(ring_difference(b, w, u).has_value());
}

TEST_CASE("coarsening of leading-term valuations keeps O_v") {
  for (int g : {0, 1}) {
    const LTHyperfield b(make_lt_context(3, g), 2);
    const auto r = check_coarsening_theorem(b, Valuation::intrinsic(1), lt_norm(b.context()));
    CHECK(r.passed());
    CHECK(r.find("TRIVIAL_IG_RING") != nullptr);
  }
}
