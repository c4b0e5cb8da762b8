#include "hyperval/hcore.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace hyperval {

std::vector<int> members(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

int popcount(Mask m) { return std::popcount(m); }

// ---------------------------------------------------------------------------
// FiniteHyperfield

FiniteHyperfield::FiniteHyperfield(std::vector<std::string> names, std::vector<int> mul, std::vector<Mask> add,
                                   nlohmann::json meta)
    : n_(names.size()), names_(std::move(names)), mul_(std::move(mul)), add_(std::move(add)), meta_(std::move(meta)) {
  if (n_ < 2) throw UsageError("a hyperfield needs at least the two elements 0 and 1");
  if (n_ > kMaxCarrier) throw UsageError("carrier larger than 64 elements");
  if (mul_.size() != n_ * n_) throw UsageError("multiplication table is not n x n");
  if (add_.size() != n_ * n_) throw UsageError("addition table is not n x n");
  for (int v : mul_) {
    if (v < 0 || static_cast<std::size_t>(v) >= n_) throw UsageError("multiplication entry out of range");
  }
  for (Mask m : add_) {
    if (m == 0) throw UsageError("empty hypersum cell");
    if (m & ~carrier()) throw UsageError("hypersum cell references an element out of range");
  }
  const int n = static_cast<int>(n_);
  neg_.assign(n_, -1);
  inv_.assign(n_, -1);
  for (int x = 0; x < n; ++x) {
    int found = -1;
    int count = 0;
    for (int y = 0; y < n; ++y) {
      if (has(add_[x * n + y], 0)) {
        found = y;
        ++count;
      }
    }
    if (count == 1) neg_[x] = found;
    if (x == 0) continue;
    for (int y = 1; y < n; ++y) {
      if (mul_[x * n + y] == 1) {
        inv_[x] = y;
        break;
      }
    }
  }
}

Mask FiniteHyperfield::add(Mask a, int y) const {
  Mask out = 0;
  for (int x : members(a)) out |= add(x, y);
  return out;
}

Mask FiniteHyperfield::add(Mask a, Mask b) const {
  Mask out = 0;
  for (int y : members(b)) out |= add(a, y);
  return out;
}

Mask FiniteHyperfield::scale(Mask a, int x) const {
  Mask out = 0;
  for (int y : members(a)) out |= bit(mul(x, y));
  return out;
}

std::string FiniteHyperfield::format(Mask m) const {
  std::string s = "{";
  bool first = true;
  for (int i : members(m)) {
    s += (first ? "" : ",") + names_[i];
    first = false;
  }
  return s + "}";
}

bool FiniteHyperfield::operator==(const FiniteHyperfield& o) const {
  return names_ == o.names_ && mul_ == o.mul_ && add_ == o.add_ && meta_ == o.meta_;
}

nlohmann::json to_json(const FiniteHyperfield& f) {
  const int n = static_cast<int>(f.size());
  nlohmann::json mul = nlohmann::json::array();
  nlohmann::json add = nlohmann::json::array();
  for (int x = 0; x < n; ++x) {
    nlohmann::json mrow = nlohmann::json::array();
    nlohmann::json arow = nlohmann::json::array();
    for (int y = 0; y < n; ++y) {
      mrow.push_back(f.mul(x, y));
      arow.push_back(members(f.add(x, y)));
    }
    mul.push_back(std::move(mrow));
    add.push_back(std::move(arow));
  }
  return nlohmann::json{{"size", n}, {"names", f.names()}, {"mul", mul}, {"add", add}, {"meta", f.meta()}};
}

FiniteHyperfield hyperfield_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw UsageError("hyperfield JSON must be an object");
    const auto n = j.at("size").get<std::size_t>();
    if (n < 2 || n > kMaxCarrier) throw UsageError("size must be between 2 and 64");
    std::vector<std::string> names;
    if (j.contains("names")) {
      names = j.at("names").get<std::vector<std::string>>();
    } else {
      for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
    }
    if (names.size() != n) throw UsageError("names length differs from size");
    const auto& mj = j.at("mul");
    const auto& aj = j.at("add");
    if (mj.size() != n || aj.size() != n) throw UsageError("table row count differs from size");
    std::vector<int> mul;
    std::vector<Mask> add;
    for (std::size_t x = 0; x < n; ++x) {
      if (mj[x].size() != n || aj[x].size() != n) throw UsageError("table row length differs from size");
      for (std::size_t y = 0; y < n; ++y) {
        mul.push_back(mj[x][y].get<int>());
        Mask m = 0;
        for (const auto& e : aj[x][y]) {
          int i = e.get<int>();
          if (i < 0 || static_cast<std::size_t>(i) >= n) throw UsageError("add cell index out of range");
          m |= bit(i);
        }
        add.push_back(m);
      }
    }
    return FiniteHyperfield(std::move(names), std::move(mul), std::move(add),
                            j.value("meta", nlohmann::json::object()));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed hyperfield JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const FiniteHyperfield& f) {
  const int n = static_cast<int>(f.size());
  ValidationReport r;
  r.subject = f.meta().value("name", std::string("finite hyperfield"));
  r.mode = kExhaustive;
  r.window = {{"carrier", n}};
  auto nm = [&](int x) { return f.name(x); };

  Verdict& ch1 = r.add("CH1");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Mask xy = f.add(x, y);
      for (int z = 0; z < n; ++z) {
        ++ch1.checked;
        if (f.add(xy, z) != f.add(f.add(y, z), x)) ch1.fail({nm(x), nm(y), nm(z)}, {x, y, z});
      }
    }
  }
  Verdict& ch2 = r.add("CH2");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      ++ch2.checked;
      if (f.add(x, y) != f.add(y, x)) ch2.fail({nm(x), nm(y)}, {x, y});
    }
  }
  Verdict& neutral = r.add("NEUTRAL");
  for (int x = 0; x < n; ++x) {
    ++neutral.checked;
    if (f.add(x, 0) != bit(x)) neutral.fail({nm(x)}, {x});
  }
  Verdict& ch3 = r.add("CH3");
  for (int x = 0; x < n; ++x) {
    ++ch3.checked;
    if (f.neg(x) < 0) ch3.fail({nm(x)}, {x});
  }
  Verdict& ch4 = r.add("CH4");
  for (int x = 0; x < n; ++x) {
    if (f.neg(x) < 0) continue;
    for (int y = 0; y < n; ++y) {
      for (int z : members(f.add(x, y))) {
        ++ch4.checked;
        if (!has(f.add(z, f.neg(x)), y)) ch4.fail({nm(x), nm(y), nm(z)}, {x, y, z});
      }
    }
  }
  if (!ch3.passed) ch4.note = "elements without a unique inverse skipped";

  Verdict& hr2 = r.add("HR2");
  for (int x = 0; x < n; ++x) {
    ++hr2.checked;
    if (f.mul(0, x) != 0 || f.mul(x, 0) != 0) hr2.fail({nm(x)}, {x});
    for (int y = 0; y < n; ++y) {
      if (f.mul(x, y) != f.mul(y, x)) hr2.fail({nm(x), nm(y)}, {x, y});
      for (int z = 0; z < n; ++z) {
        ++hr2.checked;
        if (f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z))) hr2.fail({nm(x), nm(y), nm(z)}, {x, y, z});
      }
    }
  }
  Verdict& grp = r.add("MULGROUP");
  for (int x = 1; x < n; ++x) {
    ++grp.checked;
    if (f.mul(1, x) != x) grp.fail({nm(x)}, {x});
    if (f.inv(x) < 0) grp.fail({nm(x)}, {x});
    for (int y = 1; y < n; ++y) {
      if (f.mul(x, y) == 0) grp.fail({nm(x), nm(y)}, {x, y});
    }
  }
  Verdict& hr3 = r.add("HR3");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        ++hr3.checked;
        if (f.scale(f.add(y, z), x) != f.add(f.mul(x, y), f.mul(x, z))) hr3.fail({nm(x), nm(y), nm(z)}, {x, y, z});
      }
    }
  }
  return r;
}

bool satisfies_axioms(const FiniteHyperfield& f) {
  const int n = static_cast<int>(f.size());
  for (int x = 0; x < n; ++x) {
    if (f.neg(x) < 0 || f.add(x, 0) != bit(x)) return false;
    for (int y = 0; y < n; ++y) {
      if (f.add(x, y) != f.add(y, x)) return false;
      for (int z : members(f.add(x, y))) {
        if (!has(f.add(z, f.neg(x)), y)) return false;
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (f.mul(f.mul(x, y), z) != f.mul(x, f.mul(y, z))) return false;
        if (f.scale(f.add(y, z), x) != f.add(f.mul(x, y), f.mul(x, z))) return false;
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x; y < n; ++y) {
      Mask xy = f.add(x, y);
      for (int z = 0; z < n; ++z) {
        if (f.add(xy, z) != f.add(f.add(y, z), x)) return false;
      }
    }
  }
  return validate(f).passed();
}

bool is_field(const FiniteHyperfield& f) { return f.neg(1) >= 0 && f.add(1, f.neg(1)) == bit(0); }

bool all_sums_singletons(const FiniteHyperfield& f) {
  return std::all_of(f.add_table().begin(), f.add_table().end(), [](Mask m) { return popcount(m) == 1; });
}

// ---------------------------------------------------------------------------
// Builtins

namespace {

FiniteHyperfield from_rows(std::vector<std::string> names, const std::vector<std::vector<int>>& mul,
                           const std::vector<std::vector<std::vector<int>>>& add, nlohmann::json meta) {
  std::vector<int> m;
  std::vector<Mask> a;
  for (std::size_t x = 0; x < names.size(); ++x) {
    for (std::size_t y = 0; y < names.size(); ++y) {
      m.push_back(mul[x][y]);
      Mask cell = 0;
      for (int i : add[x][y]) cell |= bit(i);
      a.push_back(cell);
    }
  }
  return FiniteHyperfield(std::move(names), std::move(m), std::move(a), std::move(meta));
}

const std::vector<std::vector<int>> kSignMul = {{0, 0, 0}, {0, 1, 2}, {0, 2, 1}};

}  // namespace

FiniteHyperfield build_K() {
  return from_rows({"0", "1"}, {{0, 0}, {0, 1}}, {{{0}, {1}}, {{1}, {0, 1}}}, {{"name", "K"}, {"kind", "builtin"}});
}

FiniteHyperfield build_S() {
  return from_rows({"0", "1", "-1"}, kSignMul,
                   {{{0}, {1}, {2}}, {{1}, {1}, {0, 1, 2}}, {{2}, {0, 1, 2}, {2}}},
                   {{"name", "S"}, {"kind", "builtin"}});
}

FiniteHyperfield build_W() {
  return from_rows({"0", "1", "-1"}, kSignMul,
                   {{{0}, {1}, {2}}, {{1}, {1, 2}, {0, 1, 2}}, {{2}, {0, 1, 2}, {1, 2}}},
                   {{"name", "W"}, {"kind", "builtin"}});
}

// ---------------------------------------------------------------------------
// Finite fields

namespace {

using Poly = std::vector<int>;  // low to high

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  Poly mm = m;
  trim(mm);
  const int dm = static_cast<int>(mm.size()) - 1;
  int lead_inv = 1;
  while ((mm.back() * lead_inv) % p != 1) ++lead_inv;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    int shift = static_cast<int>(a.size()) - 1 - dm;
    int c = (a.back() * lead_inv) % p;
    for (int i = 0; i <= dm; ++i) a[shift + i] = ((a[shift + i] - c * mm[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

std::vector<Poly> monic_polys(int p, int degree) {
  std::vector<Poly> out;
  int count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (int code = 0; code < count; ++code) {
    Poly a(degree + 1, 0);
    int c = code;
    for (int i = 0; i < degree; ++i) {
      a[i] = c % p;
      c /= p;
    }
    a[degree] = 1;
    out.push_back(a);
  }
  return out;
}

}  // namespace

std::optional<std::pair<int, int>> prime_power(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (q % p != 0) ++p;
  int k = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return std::nullopt;
  return std::make_pair(p, k);
}

bool is_irreducible(const std::vector<int>& poly, int p) {
  Poly a = poly;
  trim(a);
  const int d = static_cast<int>(a.size()) - 1;
  if (d < 1) return false;
  for (int e = 1; e <= d / 2; ++e) {
    for (const Poly& m : monic_polys(p, e)) {
      if (poly_mod(a, m, p).empty()) return false;
    }
  }
  return true;
}

std::string GaloisField::name(int a) const {
  if (k == 1) return std::to_string(a);
  if (a == 0) return "0";
  std::string s;
  for (int i = k - 1; i >= 0; --i) {
    int d = a;
    for (int j = 0; j < i; ++j) d /= p;
    d %= p;
    if (d == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0) {
      s += std::to_string(d);
    } else {
      if (d != 1) s += std::to_string(d);
      s += "a";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

int GaloisField::primitive_element() const {
  for (int g = 1; g < q; ++g) {
    int x = g;
    int order = 1;
    while (x != 1) {
      x = mul(x, g);
      ++order;
    }
    if (order == q - 1) return g;
  }
  return 1;
}

GaloisField make_galois_field(int q, std::optional<std::vector<int>> modulus) {
  auto pk = prime_power(q);
  if (!pk) throw UsageError("q = " + std::to_string(q) + " is not a prime power");
  if (q > static_cast<int>(kMaxCarrier)) throw UsageError("field order above 64 is not supported");
  GaloisField gf;
  gf.p = pk->first;
  gf.k = pk->second;
  gf.q = q;
  const int p = gf.p;
  const int k = gf.k;
  if (modulus) {
    Poly m = *modulus;
    for (int& c : m) c = ((c % p) + p) % p;
    trim(m);
    if (static_cast<int>(m.size()) != k + 1 || m.back() != 1) {
      throw UsageError("modulus must be monic of degree " + std::to_string(k));
    }
    if (!is_irreducible(m, p)) throw UsageError("modulus is reducible over F_" + std::to_string(p));
    gf.modulus = m;
  } else if (k == 1) {
    gf.modulus = {0, 1};
  } else {
    for (const Poly& m : monic_polys(p, k)) {
      if (is_irreducible(m, p)) {
        gf.modulus = m;
        break;
      }
    }
  }
  auto decode = [&](int a) {
    Poly v(k, 0);
    for (int i = 0; i < k; ++i) {
      v[i] = a % p;
      a /= p;
    }
    return v;
  };
  auto encode = [&](Poly v) {
    v.resize(k, 0);
    int a = 0;
    for (int i = k - 1; i >= 0; --i) a = a * p + v[i];
    return a;
  };
  gf.add_t.assign(q * q, 0);
  gf.mul_t.assign(q * q, 0);
  gf.neg_t.assign(q, 0);
  gf.inv_t.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    Poly da = decode(a);
    Poly na(k);
    for (int i = 0; i < k; ++i) na[i] = (p - da[i]) % p;
    gf.neg_t[a] = encode(na);
    for (int b = 0; b < q; ++b) {
      Poly db = decode(b);
      Poly s(k);
      for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      gf.add_t[a * q + b] = encode(s);
      Poly prod(2 * k, 0);
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      }
      gf.mul_t[a * q + b] = encode(poly_mod(prod, gf.modulus, p));
    }
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (gf.mul(a, b) == 1) gf.inv_t[a] = b;
    }
  }
  return gf;
}

FiniteHyperfield build_finite_field(int q, std::optional<std::vector<int>> modulus) {
  GaloisField gf = make_galois_field(q, std::move(modulus));
  std::vector<std::string> names;
  std::vector<int> mul;
  std::vector<Mask> add;
  for (int a = 0; a < q; ++a) {
    names.push_back(gf.name(a));
    for (int b = 0; b < q; ++b) {
      mul.push_back(gf.mul(a, b));
      add.push_back(bit(gf.add(a, b)));
    }
  }
  nlohmann::json meta{{"name", "F" + std::to_string(q)}, {"kind", "field"}, {"q", q}, {"p", gf.p}};
  if (gf.k > 1) meta["modulus"] = gf.modulus;
  return FiniteHyperfield(std::move(names), std::move(mul), std::move(add), std::move(meta));
}

// ---------------------------------------------------------------------------
// Factor hyperfields

Mask generated_subgroup(const FiniteHyperfield& k, const std::vector<int>& gens) {
  Mask t = bit(1);
  for (int g : gens) {
    if (g <= 0 || static_cast<std::size_t>(g) >= k.size()) {
      throw UsageError("subgroup generator must be a nonzero element");
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (int x : members(t)) {
      for (int g : gens) {
        int y = k.mul(x, g);
        if (!has(t, y)) {
          t |= bit(y);
          grew = true;
        }
      }
    }
  }
  return t;
}

FiniteHyperfield quotient_hyperfield(const FiniteHyperfield& k, const std::vector<int>& gens) {
  if (!is_field(k) || !validate(k).passed()) throw UsageError("quotient needs a field");
  const Mask t = generated_subgroup(k, gens);
  const int n = static_cast<int>(k.size());
  std::vector<int> coset(n, -1);
  std::vector<int> rep;
  coset[0] = 0;
  rep.push_back(0);
  for (int x = 1; x < n; ++x) {
    if (coset[x] >= 0) continue;
    const int id = static_cast<int>(rep.size());
    rep.push_back(x);
    for (int s : members(t)) coset[k.mul(x, s)] = id;
  }
  const int m = static_cast<int>(rep.size());
  std::vector<std::string> names;
  for (int c = 0; c < m; ++c) names.push_back("[" + k.name(rep[c]) + "]");
  std::vector<int> mul(m * m);
  std::vector<Mask> add(m * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      mul[a * m + b] = coset[k.mul(rep[a], rep[b])];
      Mask cell = 0;
      for (int s : members(t)) {
        for (int z : members(k.add(rep[a], k.mul(rep[b], s)))) cell |= bit(coset[z]);
      }
      add[a * m + b] = cell;
    }
  }
  std::vector<int> gen_list = gens;
  nlohmann::json meta{{"name", k.meta().value("name", std::string("K")) + "/T"},
                      {"kind", "quotient"},
                      {"field", k.meta()},
                      {"generators", gen_list},
                      {"subgroup", members(t)}};
  return FiniteHyperfield(std::move(names), std::move(mul), std::move(add), std::move(meta));
}

std::vector<int> cyclic_subgroup_generators(const FiniteHyperfield& k, int order) {
  const int units = static_cast<int>(k.size()) - 1;
  if (order <= 0 || units % order != 0) throw UsageError("subgroup order must divide |K^x|");
  for (int g = 1; g <= units; ++g) {
    if (popcount(generated_subgroup(k, {g})) == units) {
      int h = 1;
      for (int i = 0; i < units / order; ++i) h = k.mul(h, g);
      return {h};
    }
  }
  throw UsageError("unit group is not cyclic");
}

// ---------------------------------------------------------------------------
// Morphisms

namespace {

bool well_formed(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s) {
  if (s.map.size() != f.size()) return false;
  return std::all_of(s.map.begin(), s.map.end(),
                     [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < g.size(); });
}

Mask image_of(const Morphism& s, Mask a) {
  Mask out = 0;
  for (int x : members(a)) out |= bit(s.map[x]);
  return out;
}

bool injective(const Morphism& s) {
  std::set<int> seen(s.map.begin(), s.map.end());
  return seen.size() == s.map.size();
}

bool em1(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s) {
  const int n = static_cast<int>(f.size());
  const Mask im = image_of(s, f.carrier());
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (image_of(s, f.add(x, y)) != (g.add(s.map[x], s.map[y]) & im)) return false;
    }
  }
  return true;
}

}  // namespace

bool is_homomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s) {
  if (!well_formed(f, g, s)) return false;
  if (s.map[0] != 0 || s.map[1] != 1) return false;  // HH1, HH4
  const int n = static_cast<int>(f.size());
  for (int x = 0; x < n; ++x) {
    if (x != 0 && (f.inv(x) < 0 || s.map[f.inv(x)] != g.inv(s.map[x]))) return false;  // HH5
    for (int y = 0; y < n; ++y) {
      if (s.map[f.mul(x, y)] != g.mul(s.map[x], s.map[y])) return false;  // HH2
      Mask target = g.add(s.map[x], s.map[y]);
      if ((image_of(s, f.add(x, y)) & ~target) != 0) return false;  // HH3
    }
  }
  return true;
}

bool is_embedding(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s) {
  return is_homomorphism(f, g, s) && injective(s) && em1(f, g, s);
}

bool is_isomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s) {
  if (f.size() != g.size() || !well_formed(f, g, s)) return false;
  return is_homomorphism(f, g, s) && injective(s) && em1(f, g, s);
}

bool inverse_is_homomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g, const Morphism& s) {
  if (f.size() != g.size() || !well_formed(f, g, s) || !injective(s)) return false;
  if (!is_homomorphism(f, g, s)) return false;
  Morphism inv{std::vector<int>(g.size())};
  for (std::size_t x = 0; x < s.map.size(); ++x) inv.map[s.map[x]] = static_cast<int>(x);
  return is_homomorphism(g, f, inv);
}

namespace {

int element_order(const FiniteHyperfield& f, int x) {
  int y = x;
  int order = 1;
  while (y != 1) {
    y = f.mul(y, x);
    if (++order > static_cast<int>(f.size())) return -1;
  }
  return order;
}

// Greedy generating set of the unit group, smallest indices first.
std::vector<int> unit_generators(const FiniteHyperfield& f) {
  std::vector<int> gens;
  Mask span = bit(1);
  const Mask units = f.carrier() & ~bit(0);
  for (int x = 1; x < static_cast<int>(f.size()) && span != units; ++x) {
    if (!has(span, x)) {
      gens.push_back(x);
      span = generated_subgroup(f, gens);
    }
  }
  return gens;
}

}  // namespace

std::optional<Morphism> find_isomorphism(const FiniteHyperfield& f, const FiniteHyperfield& g) {
  if (f.size() != g.size()) return std::nullopt;
  const int n = static_cast<int>(f.size());
  const std::vector<int> gens = unit_generators(f);
  std::vector<int> orders;
  for (int x : gens) orders.push_back(element_order(f, x));
  std::optional<Morphism> best;
  std::vector<int> images(gens.size());

  // Extends generator images to the whole unit group; empty on conflict.
  auto extend = [&]() -> std::optional<Morphism> {
    Morphism s{std::vector<int>(n, -1)};
    s.map[0] = 0;
    s.map[1] = 1;
    std::vector<int> queue{1};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int a = queue[qi];
      for (std::size_t i = 0; i < gens.size(); ++i) {
        int b = f.mul(a, gens[i]);
        int img = g.mul(s.map[a], images[i]);
        if (s.map[b] < 0) {
          s.map[b] = img;
          queue.push_back(b);
        } else if (s.map[b] != img) {
          return std::nullopt;
        }
      }
    }
    if (static_cast<int>(queue.size()) != n - 1) return std::nullopt;
    return s;
  };

  std::function<void(std::size_t)> search = [&](std::size_t i) {
    if (i == gens.size()) {
      auto s = extend();
      if (s && is_isomorphism(f, g, *s) && (!best || s->map < best->map)) best = s;
      return;
    }
    for (int y = 1; y < n; ++y) {
      if (element_order(g, y) != orders[i]) continue;
      images[i] = y;
      search(i + 1);
    }
  };
  search(0);
  return best;
}

// ---------------------------------------------------------------------------
// Classification

ValidationReport check_superiorly_canonical(const FiniteHyperfield& f) {
  const int n = static_cast<int>(f.size());
  ValidationReport r;
  r.subject = f.meta().value("name", std::string("finite hyperfield"));
  r.mode = kExhaustive;
  r.window = {{"carrier", n}};
  auto nm = [&](int x) { return f.name(x); };
  auto minus = [&](int x, int y) { return f.add(x, f.neg(y)); };

  Verdict& s1 = r.add("SCH1");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      ++s1.checked;
      Mask s = f.add(x, y);
      if (has(s, x) && s != bit(x)) s1.fail({nm(x), nm(y)}, {x, y});
    }
  }
  Verdict& s2 = r.add("SCH2");
  std::map<Mask, std::pair<int, int>> sums;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) sums.emplace(f.add(x, y), std::make_pair(x, y));
  }
  for (const auto& [a, pa] : sums) {
    for (const auto& [b, pb] : sums) {
      ++s2.checked;
      if ((a & b) && (a & ~b) && (b & ~a)) {
        s2.fail({nm(pa.first), nm(pa.second), nm(pb.first), nm(pb.second)}, {pa.first, pa.second, pb.first, pb.second});
      }
    }
  }
  Verdict& s3 = r.add("SCH3");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      auto zs = members(minus(x, y));
      for (int z : zs) {
        for (int t : zs) {
          ++s3.checked;
          if (minus(z, z) != minus(t, t)) s3.fail({nm(x), nm(y), nm(z), nm(t)}, {x, y, z, t});
        }
      }
    }
  }
  Verdict& s4 = r.add("SCH4");
  for (int z = 0; z < n; ++z) {
    Mask zz = minus(z, z);
    for (int x : members(zz)) {
      for (int y = 0; y < n; ++y) {
        if (has(zz, y)) continue;
        ++s4.checked;
        if (minus(x, x) & ~minus(y, y)) s4.fail({nm(x), nm(y), nm(z)}, {x, y, z});
      }
    }
  }
  return r;
}

Classification classify(const FiniteHyperfield& f) {
  Classification c;
  const int n = static_cast<int>(f.size());
  c.is_field = is_field(f);
  c.char2 = has(f.add(1, 1), 0);
  c.cchar1 = has(f.add(1, 1), 1);
  c.stringent = true;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      Mask s = f.add(x, y);
      if (!has(s, 0) && popcount(s) != 1) c.stringent = false;
    }
  }
  c.sch = check_superiorly_canonical(f);
  c.superiorly_canonical = c.sch.passed();
  return c;
}

nlohmann::json Classification::to_json() const {
  return {{"is_field", is_field},
          {"char2", char2},
          {"cchar1", cchar1},
          {"stringent", stringent},
          {"superiorly_canonical", superiorly_canonical},
          {"sch", sch.to_json()}};
}

// ---------------------------------------------------------------------------
// Hyperideals

bool is_hyperideal(const FiniteHyperfield& f, Mask ideal, std::optional<Mask> ring) {
  const Mask r = ring.value_or(f.carrier());
  if (!has(ideal, 0) || (ideal & ~r)) return false;
  for (int x : members(ideal)) {
    for (int y : members(ideal)) {
      if (f.add(x, f.neg(y)) & ~ideal) return false;
      if (!has(ideal, f.mul(x, y))) return false;
    }
    for (int a : members(r)) {
      if (!has(ideal, f.mul(a, x))) return false;  // HID1
    }
  }
  return true;
}

Mask scalar_hyperideal(const FiniteHyperfield& f) {
  Mask s = 0;
  for (int x = 0; x < static_cast<int>(f.size()); ++x) {
    if (f.add(x, f.neg(x)) == bit(0)) s |= bit(x);
  }
  if (!is_hyperideal(f, s)) throw UsageError("scalars do not form a hyperideal; input is not a hyperfield");
  return s;
}

std::vector<Mask> list_hyperideals(const FiniteHyperfield& f, std::optional<Mask> ring) {
  const Mask r = ring.value_or(f.carrier());
  std::vector<int> rest = members(r & ~bit(0));
  if (rest.size() > 20) throw UsageError("ring too large for subset enumeration");
  std::vector<Mask> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << rest.size()); ++code) {
    Mask cand = bit(0);
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if ((code >> i) & 1U) cand |= bit(rest[i]);
    }
    if (is_hyperideal(f, cand, r)) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Quotient criteria

std::optional<NonQuotientCertificate> non_quotient_certificate(const FiniteHyperfield& f) {
  if (has(f.add(1, 1), 1)) return std::nullopt;
  std::set<Mask> seen;
  Mask current = bit(1);
  Mask reach = 0;
  while (seen.insert(current).second) {
    reach |= current;
    current = f.add(current, 1);
  }
  if (has(reach, 0)) return std::nullopt;
  return NonQuotientCertificate{reach, "1 not in 1+1 and 0 not in any sum 1+...+1 (cited finite criterion)"};
}

std::optional<QuotientWitness> quotient_search(const FiniteHyperfield& f, int q_max) {
  const int units = static_cast<int>(f.size()) - 1;
  for (int q = 2; q <= q_max && q <= static_cast<int>(kMaxCarrier); ++q) {
    if (!prime_power(q) || (q - 1) % units != 0) continue;
    FiniteHyperfield k = build_finite_field(q);
    std::vector<int> gens = cyclic_subgroup_generators(k, (q - 1) / units);
    FiniteHyperfield quot = quotient_hyperfield(k, gens);
    if (auto iso = find_isomorphism(quot, f)) return QuotientWitness{q, gens, *iso};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<int> parse_group_descriptor(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.size() < 2 || part[0] != 'C') throw UsageError("bad group descriptor: " + s);
    int m = 0;
    try {
      m = std::stoi(part.substr(1));
    } catch (const std::exception&) {
      throw UsageError("bad group descriptor: " + s);
    }
    if (m < 1) throw UsageError("bad group descriptor: " + s);
    if (m > 1) out.push_back(m);
  }
  return out;
}

std::string group_descriptor(const std::vector<int>& factors) {
  if (factors.empty()) return "C1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) s += (i ? "xC" : "C") + std::to_string(factors[i]);
  return s;
}

std::vector<std::vector<int>> unit_groups_of_order(int order) {
  const int m = order - 1;
  std::vector<std::vector<int>> out;
  // invariant factors d1 | d2 | ... with product m
  std::function<void(int, std::vector<int>&)> rec = [&](int rest, std::vector<int>& cur) {
    if (rest == 1) {
      out.push_back(cur);
      return;
    }
    for (int d = 2; d <= rest; ++d) {
      if (rest % d != 0) continue;
      if (!cur.empty() && d % cur.back() != 0) continue;
      // remaining product must be divisible by d for later factors to be multiples
      if ((rest / d) % d != 0 && rest / d != 1) continue;
      cur.push_back(d);
      rec(rest / d, cur);
      cur.pop_back();
    }
  };
  std::vector<int> cur;
  if (m >= 1) rec(m, cur);
  return out;
}

namespace {

struct UnitGroup {
  int size = 1;
  std::vector<int> factors;
  std::vector<std::vector<int>> elems;  // exponent tuples, identity first
  std::vector<std::string> names;

  explicit UnitGroup(std::vector<int> f) : factors(std::move(f)) {
    for (int d : factors) size *= d;
    std::vector<int> e(factors.size(), 0);
    for (int i = 0; i < size; ++i) {
      elems.push_back(e);
      for (std::size_t j = factors.size(); j-- > 0;) {
        if (++e[j] < factors[j]) break;
        e[j] = 0;
      }
    }
    for (const auto& ex : elems) {
      std::string s;
      for (std::size_t j = 0; j < ex.size(); ++j) {
        if (ex[j] == 0) continue;
        if (!s.empty()) s += "*";
        s += factors.size() == 1 ? "g" : "g" + std::to_string(j + 1);
        if (ex[j] > 1) s += "^" + std::to_string(ex[j]);
      }
      names.push_back(s.empty() ? "1" : s);
    }
  }

  int index(const std::vector<int>& e) const {
    int i = 0;
    for (std::size_t j = 0; j < factors.size(); ++j) i = i * factors[j] + e[j];
    return i;
  }
  int mul(int a, int b) const {
    std::vector<int> e(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) e[j] = (elems[a][j] + elems[b][j]) % factors[j];
    return index(e);
  }
  int inv(int a) const {
    std::vector<int> e(factors.size());
    for (std::size_t j = 0; j < factors.size(); ++j) e[j] = (factors[j] - elems[a][j]) % factors[j];
    return index(e);
  }
};

}  // namespace

std::vector<FiniteHyperfield> enumerate_hyperfields(int order, const std::vector<int>& group, int cap) {
  if (order < 2) throw UsageError("order must be at least 2");
  if (order > cap) throw UsageError("order " + std::to_string(order) + " exceeds enumeration cap " + std::to_string(cap));
  UnitGroup g(group);
  if (g.size != order - 1) throw UsageError("unit group order must be order - 1");
  const int n = order;
  // carrier index: 0 is zero, 1 + i is unit i
  std::vector<int> mul(n * n, 0);
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) mul[a * n + b] = 1 + g.mul(a - 1, b - 1);
  }
  auto cmul = [&](int a, int b) { return mul[a * n + b]; };
  auto cinv = [&](int a) { return 1 + g.inv(a - 1); };
  auto cscale = [&](Mask m, int a) {
    Mask out = 0;
    for (int x : members(m)) out |= bit(cmul(a, x));
    return out;
  };
  std::vector<std::string> names{"0"};
  for (const auto& s : g.names) names.push_back(s);

  // Free positions: a unit a with a <= a^{-1}; h(a^{-1}) = a^{-1} h(a).
  std::vector<int> free;
  for (int a = 1; a < n; ++a) {
    if (a <= cinv(a)) free.push_back(a);
  }
  const Mask full = (n == 64) ? ~Mask{0} : bit(n) - 1;

  std::vector<FiniteHyperfield> found;
  for (int e = 1; e < n; ++e) {
    if (cmul(e, e) != 1) continue;  // -1 squares to 1
    std::vector<std::vector<Mask>> options;
    for (int a : free) {
      std::vector<Mask> opts;
      for (Mask m = 1; m <= full; ++m) {
        if (has(m, 0) != (a == e)) continue;
        if (cinv(a) == a && cscale(m, a) != m) continue;
        opts.push_back(m);
      }
      options.push_back(std::move(opts));
    }
    std::vector<std::size_t> pick(free.size(), 0);
    while (true) {
      std::vector<Mask> h(n, 0);
      h[0] = bit(1);
      for (std::size_t i = 0; i < free.size(); ++i) {
        int a = free[i];
        h[a] = options[i][pick[i]];
        h[cinv(a)] = cscale(h[a], cinv(a));
      }
      std::vector<Mask> add(n * n);
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          add[x * n + y] = x == 0 ? bit(y) : cscale(h[cmul(cinv(x), y)], x);
        }
      }
      FiniteHyperfield cand(names, mul, add, {{"kind", "enumerated"}, {"unit_group", group_descriptor(group)}});
      if (satisfies_axioms(cand)) {
        bool dup = std::any_of(found.begin(), found.end(),
                               [&](const FiniteHyperfield& o) { return find_isomorphism(cand, o).has_value(); });
        if (!dup) {
          cand.meta()["name"] = "H" + std::to_string(n) + "." + group_descriptor(group) + "." + std::to_string(found.size());
          found.push_back(std::move(cand));
        }
      }
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == options[i].size()) {
        pick[i] = 0;
        ++i;
      }
      if (i == pick.size()) break;
    }
  }
  return found;
}

std::vector<FiniteHyperfield> enumerate_hyperfields(int order, int cap) {
  std::vector<FiniteHyperfield> out;
  for (const auto& grp : unit_groups_of_order(order)) {
    auto part = enumerate_hyperfields(order, grp, cap);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace hyperval
