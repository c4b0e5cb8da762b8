#include "hyperval/valn.hpp"

namespace hyperval {

FiniteBackend::FiniteBackend(FiniteHyperfield f) : f_(std::move(f)) {
  values_.assign(f_.size(), GroupElem{0});
  values_[0] = ExtValue::infinity();
  for (int i = 0; i < static_cast<int>(f_.size()); ++i) window_.push_back(i);
}

FiniteBackend::FiniteBackend(FiniteHyperfield f, std::vector<ExtValue> values)
    : f_(std::move(f)), values_(std::move(values)) {
  if (values_.size() != f_.size()) throw UsageError("value table size differs from carrier size");
  for (const auto& v : values_) {
    if (!v.is_infinite() && v.finite().rank() != 1) throw UsageError("finite value tables take values in Z");
  }
  for (int i = 0; i < static_cast<int>(f_.size()); ++i) window_.push_back(i);
}

int FiniteBackend::neg(int x) const {
  const int n = f_.neg(x);
  if (n < 0) throw UsageError("element without a unique additive inverse: " + f_.name(x));
  return n;
}

int FiniteBackend::inv(int x) const {
  const int n = f_.inv(x);
  if (n < 0) throw UsageError("element without a multiplicative inverse: " + f_.name(x));
  return n;
}

SetShape FiniteBackend::shape(Mask s) const {
  SetShape out;
  for (int x : members(s)) out.values.push_back(values_[x]);
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  return out;
}

std::string FiniteBackend::subject() const {
  if (f_.meta().contains("name")) return f_.meta()["name"].get<std::string>();
  return "finite hyperfield of order " + std::to_string(f_.size());
}

nlohmann::json FiniteBackend::window_params() const { return {{"backend", "finite"}, {"order", f_.size()}}; }

CanonicalValuation canonical_valuation_from_ring(const FiniteHyperfield& f, Mask ring) {
  const int n = static_cast<int>(f.size());
  CanonicalValuation out;
  out.report.subject = "F^x / O^x for O = " + f.format(ring);
  out.report.window = {{"backend", "finite"}, {"order", n}};
  auto in = [&](int x) { return has(ring, x); };
  Mask units = 0;
  for (int x = 1; x < n; ++x) {
    if (in(x) && f.inv(x) >= 0 && in(f.inv(x))) units |= bit(x);
  }
  out.coset_of.assign(n, -1);
  Verdict& part = out.report.add("COSETS");
  for (int x = 1; x < n; ++x) {
    if (out.coset_of[x] >= 0) continue;
    Mask c = f.scale(units, x);
    ++part.checked;
    for (int y : members(c)) {
      if (out.coset_of[y] >= 0) part.fail({f.name(x), f.name(y)}, {x, y});
      out.coset_of[y] = static_cast<int>(out.cosets.size());
    }
    out.cosets.push_back(c);
  }
  const int m = static_cast<int>(out.cosets.size());
  std::vector<int> rep(m);
  for (int c = 0; c < m; ++c) rep[c] = members(out.cosets[c]).front();
  auto le = [&](int a, int b) { return in(f.mul(rep[b], f.inv(rep[a]))); };

  Verdict& wd = out.report.add("WELLDEF");
  for (int x = 1; x < n; ++x) {
    for (int y = 1; y < n; ++y) {
      ++wd.checked;
      if (in(f.mul(y, f.inv(x))) != le(out.coset_of[x], out.coset_of[y])) wd.fail({f.name(x), f.name(y)}, {x, y});
    }
  }
  Verdict& total = out.report.add("TOTAL");
  Verdict& anti = out.report.add("ANTISYM");
  Verdict& compat = out.report.add("COMPAT");
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      ++total.checked;
      if (!le(a, b) && !le(b, a)) total.fail({f.name(rep[a]), f.name(rep[b])}, {rep[a], rep[b]});
      ++anti.checked;
      if (a != b && le(a, b) && le(b, a)) anti.fail({f.name(rep[a]), f.name(rep[b])}, {rep[a], rep[b]});
      if (!le(a, b)) continue;
      for (int c = 0; c < m; ++c) {
        ++compat.checked;
        const int ac = out.coset_of[f.mul(rep[a], rep[c])];
        const int bc = out.coset_of[f.mul(rep[b], rep[c])];
        if (!le(ac, bc)) compat.fail({f.name(rep[a]), f.name(rep[b]), f.name(rep[c])}, {rep[a], rep[b], rep[c]});
      }
    }
  }
  Verdict& same = out.report.add("RING");
  for (int x = 0; x < n; ++x) {
    ++same.checked;
    const bool pi_ring = x == 0 || le(out.coset_of[1], out.coset_of[x]);
    if (pi_ring != in(x)) same.fail({f.name(x)}, {x});
  }
  return out;
}

std::vector<Mask> valuation_hyperrings(const FiniteHyperfield& f) {
  if (f.size() > 20) throw UsageError("subset search limited to 20 elements");
  FiniteBackend b(f);
  std::vector<Mask> out;
  const Mask all = f.carrier();
  for (Mask o = 0; o <= all; ++o) {
    if (!has(o, 0) || !has(o, 1)) continue;
    auto r = is_valuation_hyperring<FiniteBackend>(b, [o](const int& x) { return has(o, x); });
    if (r.passed()) out.push_back(o);
  }
  return out;
}

namespace {

template <class Pred>
Mask collect(const FiniteBackend& b, Pred p) {
  Mask m = 0;
  for (int x : b.window()) {
    if (p(x)) m |= bit(x);
  }
  return m;
}

}  // namespace

Mask ring_mask(const FiniteBackend& b, const Valuation& v) {
  return collect(b, [&](int x) { return in_valuation_ring(b, v, x); });
}

Mask maximal_ideal_mask(const FiniteBackend& b, const Valuation& v) {
  return collect(b, [&](int x) { return in_maximal_ideal(b, v, x); });
}

Mask units_mask(const FiniteBackend& b, const Valuation& v) {
  return collect(b, [&](int x) { return is_valuation_unit(b, v, x); });
}

bool check_maximal_ideal(const FiniteBackend& b, const Valuation& v) {
  const FiniteHyperfield& f = b.hyperfield();
  const Mask o = ring_mask(b, v);
  const Mask m = maximal_ideal_mask(b, v);
  if ((o & ~units_mask(b, v)) != m) return false;
  if (!is_hyperideal(f, m, o)) return false;
  for (Mask i : list_hyperideals(f, o)) {
    if (i != o && (i & ~m) != 0) return false;
  }
  return true;
}

ResidueEmbedding residue_embedding_check(const LTHyperfield& b) {
  const LTContext& ctx = b.context();
  const Valuation v = Valuation::intrinsic(1);
  const Residue<LTHyperfield> res = residue_hyperfield(b, v);
  const FiniteHyperfield& k = res.field;
  const int n = static_cast<int>(k.size());
  auto same = [&](const LTElement& x, const LTElement& y) { return meets_maximal_ideal(b, v, b.add(x, b.neg(y))); };
  auto class_of = [&](const LTElement& x) {
    if (in_maximal_ideal(b, v, x)) return 0;
    for (int c = 1; c < n; ++c) {
      if (same(x, res.reps[c])) return c;
    }
    throw std::logic_error("unit outside every residue class");
  };

  ResidueEmbedding out;
  out.image.assign(n, lt_zero());
  std::vector<int> constant(static_cast<std::size_t>(ctx.gamma + 1), 0);
  for (int a = 1; a < ctx.q(); ++a) {
    constant[0] = a;
    const LTElement x = lt_make(ctx, 0, constant);
    const int c = class_of(x);
    if (out.image[c].zero) out.image[c] = x;
  }

  ValidationReport& r = out.report;
  r = window_report(b);
  r.subject = "residue embedding into " + b.subject();
  Verdict& wd = r.add("WELLDEF");
  for (const auto& x : b.window()) {
    if (!is_valuation_unit(b, v, x)) continue;
    ++wd.checked;
    const LTElement& img = out.image[class_of(x)];
    if (!(x == img)) wd.fail({b.name(x), "1-unit " + b.name(b.mul(x, b.inv(img)))});
  }
  Verdict& hh1 = r.add("HH1");
  ++hh1.checked;
  if (!out.image[0].zero) hh1.fail({b.name(out.image[0])});
  Verdict& hh4 = r.add("HH4");
  ++hh4.checked;
  if (!(out.image[1] == b.one())) hh4.fail({b.name(out.image[1])});
  Verdict& hh2 = r.add("HH2");
  Verdict& hh5 = r.add("HH5");
  Verdict& hh3 = r.add("HH3");
  Verdict& em1 = r.add("EM1");
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      ++hh5.checked;
      if (!(out.image[k.inv(i)] == b.inv(out.image[i]))) hh5.fail({k.name(i)}, {i});
    }
    for (int j = 0; j < n; ++j) {
      ++hh2.checked;
      if (!(out.image[k.mul(i, j)] == b.mul(out.image[i], out.image[j]))) hh2.fail({k.name(i), k.name(j)}, {i, j});
      const LTSet s = b.add(out.image[i], out.image[j]);
      ++hh3.checked;
      ++em1.checked;
      for (int c = 0; c < n; ++c) {
        const bool lhs = has(k.add(i, j), c);
        const bool rhs = b.contains(s, out.image[c]);
        if (lhs && !rhs) hh3.fail({k.name(i), k.name(j), k.name(c)}, {i, j, c});
        if (lhs != rhs) em1.fail({k.name(i), k.name(j), k.name(c)}, {i, j, c});
      }
    }
  }
  out.embedding = r.passed();
  return out;
}

}  // namespace hyperval
