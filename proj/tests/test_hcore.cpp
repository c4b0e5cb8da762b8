#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <functional>
#include <numeric>
#include <set>

#include "hyperval/hcore.hpp"

using namespace hyperval;

namespace {

// Independent brute force over hyperfields whose unit group is cyclic of
// order n-1, written without the library's checker. Element i >= 1 is g^(i-1).
struct Naive {
  int n;
  std::vector<std::vector<Mask>> add;

  int mul(int a, int b) const {
    if (a == 0 || b == 0) return 0;
    return 1 + (a - 1 + b - 1) % (n - 1);
  }
  int inv(int a) const { return 1 + (n - 1 - (a - 1)) % (n - 1); }
  Mask scale(Mask m, int a) const {
    Mask out = 0;
    for (int i = 0; i < n; ++i) {
      if (has(m, i)) out |= bit(mul(i, a));
    }
    return out;
  }
  Mask sum(Mask a, Mask b) const {
    Mask out = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (has(a, i) && has(b, j)) out |= add[i][j];
      }
    }
    return out;
  }

  // cells[k] = 1 + g^k for k = 0 .. n-2.
  static std::optional<Naive> build(int n, const std::vector<Mask>& cells) {
    Naive h{n, std::vector<std::vector<Mask>>(n, std::vector<Mask>(n))};
    for (int x = 0; x < n; ++x) {
      h.add[0][x] = h.add[x][0] = bit(x);
    }
    for (int x = 1; x < n; ++x) {
      for (int y = 1; y < n; ++y) {
        const int k = h.mul(y, h.inv(x)) - 1;
        h.add[x][y] = h.scale(cells[k], x);
      }
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (h.add[x][y] != h.add[y][x]) return std::nullopt;
        for (int z = 0; z < n; ++z) {
          if (h.sum(h.add[x][y], bit(z)) != h.sum(bit(x), h.add[y][z])) return std::nullopt;
        }
      }
    }
    std::vector<int> neg(n, -1);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (has(h.add[x][y], 0)) {
          if (neg[x] >= 0) return std::nullopt;
          neg[x] = y;
        }
      }
      if (neg[x] < 0) return std::nullopt;
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        for (int z = 0; z < n; ++z) {
          if (has(h.add[y][z], x) && !has(h.add[x][neg[y]], z)) return std::nullopt;
        }
      }
    }
    return h;
  }

  // Canonical key under the automorphisms g -> g^e of the cyclic group.
  std::vector<Mask> key() const {
    std::vector<Mask> best;
    for (int e = 1; e < n; ++e) {
      if (std::gcd(e, n - 1) != 1) continue;
      auto phi = [&](int i) { return i == 0 ? 0 : 1 + ((i - 1) * e) % (n - 1); };
      std::vector<Mask> k;
      for (int c = 0; c + 1 < n; ++c) {
        Mask m = 0;
        for (int i = 0; i < n; ++i) {
          if (has(add[1][1 + c], i)) m |= bit(phi(i));
        }
        k.push_back(m);
      }
      // reorder so that entry c describes 1 + g^(c*e)
      std::vector<Mask> r(n - 1);
      for (int c = 0; c + 1 < n; ++c) r[(c * e) % (n - 1)] = k[c];
      if (best.empty() || r < best) best = r;
    }
    return best;
  }
};

std::size_t naive_count(int n) {
  std::set<std::vector<Mask>> seen;
  const Mask full = bit(n) - 1;
  std::vector<Mask> cells(n - 1, 1);
  std::function<void(int)> rec = [&](int k) {
    if (k == n - 1) {
      if (auto h = Naive::build(n, cells)) seen.insert(h->key());
      return;
    }
    for (Mask m = 1; m <= full; ++m) {
      cells[k] = m;
      rec(k + 1);
    }
  };
  rec(0);
  return seen.size();
}

FiniteHyperfield fixture(const std::string& name) {
  std::ifstream in(std::string(HYPERVAL_TEST_DATA) + "/" + name);
  REQUIRE(in);
  nlohmann::json j;
  in >> j;
  return hyperfield_from_json(j);
}

}  // namespace

TEST_CASE("builtins satisfy the axioms") {
  for (const auto& f : {build_K(), build_S(), build_W()}) CHECK(validate(f).passed());
  for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 16, 25}) CHECK(validate(build_finite_field(q)).passed());
  CHECK_THROWS_AS(build_finite_field(6), UsageError);
}

TEST_CASE("small table facts") {
  const auto k = build_K();
  CHECK(k.add(1, 1) == (bit(0) | bit(1)));
  const auto s = build_S();
  CHECK(popcount(s.add(1, s.neg(1))) == 3);
  const auto w = build_W();
  CHECK(w.add(1, 1) == (bit(1) | bit(w.neg(1))));
}

TEST_CASE("mutating a sum cell is caught") {
  const auto k = build_K();
  std::vector<Mask> add = k.add_table();
  add[1 * 2 + 1] = bit(1);  // 1 + 1 = {1}: 1 loses its negative
  const FiniteHyperfield bad(k.names(), k.mul_table(), add);
  CHECK_FALSE(validate(bad).passed());
  CHECK_FALSE(satisfies_axioms(bad));

  const auto w = build_W();
  std::vector<Mask> wadd = w.add_table();
  wadd[1 * 3 + 1] = bit(1);  // 1 + 1 = {1} breaks distributivity
  const FiniteHyperfield bad_w(w.names(), w.mul_table(), wadd);
  const auto r = validate(bad_w);
  CHECK_FALSE(r.passed());
}

TEST_CASE("JSON round trip") {
  for (const auto& f : {build_K(), build_S(), build_W(), build_finite_field(9)}) {
    const auto j = to_json(f);
    const auto g = hyperfield_from_json(j);
    CHECK(g == f);
    CHECK(to_json(g).dump() == j.dump());
  }
  CHECK_THROWS_AS(hyperfield_from_json(nlohmann::json{{"names", {"0"}}}), UsageError);
}

TEST_CASE("enumeration counts match a brute-force count") {
  // Orders 2 and 3 have cyclic unit groups only; order 4 has C3 only.
  for (int n : {2, 3, 4}) {
    const auto lib = enumerate_hyperfields(n);
    CHECK(lib.size() == naive_count(n));
    for (const auto& f : lib) CHECK(validate(f).passed());
  }
  // frozen from the brute force above
  CHECK(enumerate_hyperfields(2).size() == 2);
  CHECK(enumerate_hyperfields(3).size() == 5);
  CHECK(enumerate_hyperfields(4).size() == 7);
}

TEST_CASE("enumerated hyperfields are pairwise non-isomorphic") {
  for (int n : {3, 4, 5}) {
    const auto v = enumerate_hyperfields(n);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) CHECK_FALSE(find_isomorphism(v[i], v[j]).has_value());
    }
  }
}

TEST_CASE("factor hyperfields of finite fields") {
  for (int q : {3, 4, 5, 7, 9}) {
    const auto k = build_finite_field(q);
    const auto f = quotient_hyperfield(k, cyclic_subgroup_generators(k, q - 1));
    CHECK(find_isomorphism(f, build_K()).has_value());
  }
  for (int p : {7, 11, 19, 23}) {
    const auto k = build_finite_field(p);
    CHECK(find_isomorphism(quotient_hyperfield(k, cyclic_subgroup_generators(k, (p - 1) / 2)), build_W()));
  }
  for (int p : {5, 13}) {
    const auto k = build_finite_field(p);
    CHECK_FALSE(find_isomorphism(quotient_hyperfield(k, cyclic_subgroup_generators(k, (p - 1) / 2)), build_W()));
  }
  const auto k = build_finite_field(7);
  const auto triv = quotient_hyperfield(k, {1});
  CHECK(find_isomorphism(triv, k).has_value());
  CHECK(quotient_search(build_W(), 23).has_value());
}

TEST_CASE("morphisms between small hyperfields") {
  const auto s = build_S(), w = build_W(), k = build_K();
  // S -> W sending -1 to -1 is a homomorphism but not an embedding.
  Morphism sw{{0, 1, w.neg(1)}};
  REQUIRE(s.neg(1) == 2);
  CHECK(is_homomorphism(s, w, sw));
  CHECK_FALSE(is_embedding(s, w, sw));
  const auto f5 = build_finite_field(5);
  Morphism to_k{{0, 1, 1, 1, 1}};
  CHECK(is_homomorphism(f5, k, to_k));
  CHECK_FALSE(is_embedding(f5, k, to_k));
  const auto iso = find_isomorphism(w, w);
  REQUIRE(iso);
  CHECK(is_isomorphism(w, w, *iso));
  CHECK(inverse_is_homomorphism(w, w, *iso));
}

TEST_CASE("classification of the builtins") {
  const auto ck = classify(build_K());
  CHECK(ck.char2);
  CHECK(ck.cchar1);
  CHECK(ck.stringent);
  CHECK_FALSE(ck.superiorly_canonical);
  for (const auto& f : {build_S(), build_W(), build_K()}) {
    const auto c = classify(f);
    CHECK_FALSE(c.sch.passed("SCH1"));
    CHECK_FALSE(c.sch.find("SCH1")->witness.empty());
  }
  CHECK(classify(build_finite_field(5)).superiorly_canonical);
}

TEST_CASE("hyperideals") {
  const auto f = build_finite_field(5);
  CHECK(list_hyperideals(f).size() == 2);
  const auto w = build_W();
  for (Mask m : list_hyperideals(w)) CHECK(is_hyperideal(w, m));
}

TEST_CASE("order-7 fixture carries a non-quotient certificate") {
  const auto h = fixture("h7_nonquotient.json");
  CHECK(validate(h).passed());
  const auto cert = non_quotient_certificate(h);
  REQUIRE(cert);
  CHECK_FALSE(has(cert->reachable, 0));
  CHECK_FALSE(has(h.add(1, 1), 1));
  CHECK_FALSE(quotient_search(h, 29).has_value());
  // Orders 2 to 4 admit no such certificate.
  for (int n : {2, 3, 4}) {
    for (const auto& f : enumerate_hyperfields(n)) CHECK_FALSE(non_quotient_certificate(f).has_value());
  }
}

TEST_CASE("group descriptors") {
  CHECK(parse_group_descriptor("C2xC2") == std::vector<int>{2, 2});
  CHECK(group_descriptor({4}) == "C4");
  CHECK_THROWS_AS(parse_group_descriptor("Z4"), UsageError);
}
