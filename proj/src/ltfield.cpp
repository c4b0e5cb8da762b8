#include "hyperval/ltfield.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace hyperval {

namespace {

int len_of(const LTContext& ctx) { return ctx.gamma + 1; }

Digits series_mul(const GaloisField& f, const Digits& a, const Digits& b, int len) {
  Digits r{};
  for (int k = 0; k < len; ++k) {
    int acc = 0;
    for (int i = 0; i <= k; ++i) acc = f.add(acc, f.mul(a[i], b[k - i]));
    r[k] = static_cast<std::uint8_t>(acc);
  }
  return r;
}

Digits series_inv(const GaloisField& f, const Digits& a, int len) {
  Digits r{};
  const int a0inv = f.inv(a[0]);
  r[0] = static_cast<std::uint8_t>(a0inv);
  for (int k = 1; k < len; ++k) {
    int acc = 0;
    for (int i = 1; i <= k; ++i) acc = f.add(acc, f.mul(a[i], r[k - i]));
    r[k] = static_cast<std::uint8_t>(f.mul(f.neg(acc), a0inv));
  }
  return r;
}

Digits scalar_mul(const GaloisField& f, const Digits& a, int s, int len) {
  Digits r{};
  for (int i = 0; i < len; ++i) r[i] = static_cast<std::uint8_t>(f.mul(a[i], s));
  return r;
}

Digits canonical_digits(const LTContext& ctx, const Digits& c) {
  Digits best = c;
  for (int s : ctx.scalars) {
    Digits d = scalar_mul(ctx.field, c, s, len_of(ctx));
    if (d < best) best = d;
  }
  return best;
}

LTBall zero_ball(std::int64_t radius) {
  LTBall b;
  b.radius = radius;
  return b;
}

LTBall ball_of(const LTContext& ctx, const LTElement& x) {
  if (x.zero) return zero_ball(kInfRadius);
  LTBall b;
  b.zero_center = false;
  b.lo = x.value;
  b.radius = x.value + ctx.gamma + 1;
  b.d = x.c;
  return b;
}

LTBall combine(const LTContext& ctx, const LTBall& a, const LTBall& b) {
  const std::int64_t r = std::min(a.radius, b.radius);
  if (a.zero_center && b.zero_center) return zero_ball(r);
  std::int64_t lo = kInfRadius;
  if (!a.zero_center) lo = a.lo;
  if (!b.zero_center) lo = std::min(lo, b.lo);
  if (lo >= r) return zero_ball(r);
  const auto len = static_cast<int>(r - lo);
  if (len > len_of(ctx)) throw std::logic_error("ball center wider than gamma + 1");
  Digits sum{};
  for (const LTBall* ball : {&a, &b}) {
    if (ball->zero_center) continue;
    for (int k = 0; k < len; ++k) {
      const std::int64_t i = lo + k - ball->lo;
      if (i < 0 || i >= ball->radius - ball->lo) continue;
      sum[k] = static_cast<std::uint8_t>(ctx.field.add(sum[k], ball->d[static_cast<std::size_t>(i)]));
    }
  }
  int first = 0;
  while (first < len && sum[first] == 0) ++first;
  if (first == len) return zero_ball(r);
  LTBall out;
  out.zero_center = false;
  out.lo = lo + first;
  out.radius = r;
  for (int k = first; k < len; ++k) out.d[k - first] = sum[k];
  return out;
}

LTBall scale_ball(const LTContext& ctx, const LTBall& b, const LTElement& x) {
  if (x.zero) return zero_ball(kInfRadius);
  if (b.zero_center) return zero_ball(b.radius == kInfRadius ? kInfRadius : b.radius + x.value);
  LTBall out = b;
  out.d = series_mul(ctx.field, b.d, x.c, static_cast<int>(b.radius - b.lo));
  out.lo += x.value;
  out.radius += x.value;
  return out;
}

LTBall scalar_ball(const LTContext& ctx, const LTBall& b, int s) {
  if (b.zero_center) return b;
  LTBall out = b;
  out.d = scalar_mul(ctx.field, b.d, s, static_cast<int>(b.radius - b.lo));
  return out;
}

bool ball_contains(const LTBall& b, const LTElement& x) {
  if (x.zero) return b.zero_center;
  if (b.zero_center) return x.value >= b.radius;
  if (x.value != b.lo) return false;
  for (std::int64_t i = 0; i < b.radius - b.lo; ++i) {
    if (x.c[static_cast<std::size_t>(i)] != b.d[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

bool ball_subset(const LTBall& a, const LTBall& b) {
  if (a.radius < b.radius) return false;
  if (a.zero_center) return b.zero_center;
  if (b.zero_center) return a.lo >= b.radius;
  if (a.lo != b.lo) return false;
  for (std::int64_t i = 0; i < b.radius - b.lo; ++i) {
    if (a.d[static_cast<std::size_t>(i)] != b.d[static_cast<std::size_t>(i)]) return false;
  }
  return true;
}

bool ball_is_leaf(const LTContext& ctx, const LTBall& b) {
  return b.zero_center ? b.radius == kInfRadius : b.radius == b.lo + ctx.gamma + 1;
}

LTBall parent_of(const LTBall& b) {
  const std::int64_t r = b.radius - 1;
  if (b.zero_center || r <= b.lo) return zero_ball(r);
  LTBall p = b;
  p.radius = r;
  p.d[static_cast<std::size_t>(r - b.lo)] = 0;
  return p;
}

std::vector<LTBall> saturate(const LTContext& ctx, std::vector<LTBall> balls) {
  if (ctx.trivial_scalars()) return balls;
  const std::size_t n = balls.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : ctx.scalars) {
      if (s != 1) balls.push_back(scalar_ball(ctx, balls[i], s));
    }
  }
  return balls;
}

std::string digits_name(const LTContext& ctx, const Digits& d, int known) {
  std::string s;
  for (int i = 0; i < len_of(ctx); ++i) {
    if (i) s += ",";
    s += i < known ? std::to_string(d[i]) : "*";
  }
  return s;
}

std::string ball_name(const LTContext& ctx, const LTBall& b) {
  if (b.zero_center) return b.radius == kInfRadius ? "{0}" : "v>=" + std::to_string(b.radius);
  return "(" + std::to_string(b.lo) + ";" + digits_name(ctx, b.d, static_cast<int>(b.radius - b.lo)) + ")";
}

std::int64_t ipow(std::int64_t base, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (r > kMaterializeCap) return r;
    r *= base;
  }
  return r;
}

}  // namespace

nlohmann::json LTContext::to_json() const {
  nlohmann::json j{{"q", field.q}, {"modulus", field.modulus}, {"gamma", gamma}};
  if (!trivial_scalars()) j["scalars"] = scalars;
  return j;
}

LTContext make_lt_context(int q, int gamma, std::optional<std::vector<int>> modulus,
                          const std::vector<int>& scalar_gens) {
  if (gamma < 0 || gamma > kMaxGamma) throw UsageError("gamma must lie in [0, 15]");
  LTContext ctx;
  ctx.field = make_galois_field(q, std::move(modulus));
  ctx.gamma = gamma;
  std::set<int> s{1};
  bool grew = true;
  for (int g : scalar_gens) {
    if (g <= 0 || g >= q) throw UsageError("scalar generator outside F_q^x");
  }
  while (grew) {
    grew = false;
    for (int a : std::vector<int>(s.begin(), s.end())) {
      for (int g : scalar_gens) grew |= s.insert(ctx.field.mul(a, g)).second;
    }
  }
  ctx.scalars.assign(s.begin(), s.end());
  return ctx;
}

LTContext make_lt_context_full_units(int q, int gamma) {
  LTContext probe = make_lt_context(q, gamma);
  return make_lt_context(q, gamma, probe.field.modulus, {probe.field.primitive_element()});
}

bool LTElement::operator<(const LTElement& o) const {
  if (zero != o.zero) return zero;
  return std::tie(value, c) < std::tie(o.value, o.c);
}

LTElement lt_zero() { return {}; }

LTElement lt_make(const LTContext& ctx, std::int64_t value, const std::vector<int>& coeffs) {
  if (static_cast<int>(coeffs.size()) != len_of(ctx)) throw UsageError("expected gamma + 1 coefficients");
  LTElement x;
  x.zero = false;
  x.value = value;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] < 0 || coeffs[i] >= ctx.q()) throw UsageError("coefficient outside F_q");
    x.c[i] = static_cast<std::uint8_t>(coeffs[i]);
  }
  if (x.c[0] == 0) throw UsageError("leading coefficient must be nonzero");
  x.c = canonical_digits(ctx, x.c);
  return x;
}

std::vector<int> lt_coeffs(const LTContext& ctx, const LTElement& x) {
  if (x.zero) return {};
  return std::vector<int>(x.c.begin(), x.c.begin() + len_of(ctx));
}

LTElement lt_mul(const LTContext& ctx, const LTElement& x, const LTElement& y) {
  if (x.zero || y.zero) return lt_zero();
  LTElement r;
  r.zero = false;
  r.value = x.value + y.value;
  r.c = canonical_digits(ctx, series_mul(ctx.field, x.c, y.c, len_of(ctx)));
  return r;
}

LTElement lt_neg(const LTContext& ctx, const LTElement& x) {
  if (x.zero) return x;
  LTElement r = x;
  r.c = canonical_digits(ctx, scalar_mul(ctx.field, x.c, ctx.field.neg(1), len_of(ctx)));
  return r;
}

LTElement lt_inv(const LTContext& ctx, const LTElement& x) {
  if (x.zero) throw UsageError("zero has no inverse");
  LTElement r;
  r.zero = false;
  r.value = -x.value;
  r.c = canonical_digits(ctx, series_inv(ctx.field, x.c, len_of(ctx)));
  return r;
}

ExtValue lt_valuation(const LTElement& x) {
  if (x.zero) return ExtValue::infinity();
  return GroupElem{x.value};
}

Cut lt_norm(const LTContext& ctx) { return Cut::at_most(GroupElem{ctx.gamma}); }

std::string lt_name(const LTContext& ctx, const LTElement& x) {
  if (x.zero) return "0";
  return "(" + std::to_string(x.value) + ";" + digits_name(ctx, x.c, len_of(ctx)) + ")";
}

nlohmann::json lt_to_json(const LTContext& ctx, const LTElement& x) {
  if (x.zero) return nullptr;
  return {{"value", x.value}, {"coeffs", lt_coeffs(ctx, x)}};
}

bool LTBall::operator==(const LTBall& o) const {
  return zero_center == o.zero_center && lo == o.lo && radius == o.radius && d == o.d;
}

bool LTBall::operator<(const LTBall& o) const {
  return std::tie(zero_center, lo, radius, d) < std::tie(o.zero_center, o.lo, o.radius, o.d);
}

LTSet::LTSet(const LTContext& ctx, std::vector<LTBall> balls) {
  const auto q = static_cast<std::size_t>(ctx.q());
  for (;;) {
    std::sort(balls.begin(), balls.end());
    balls.erase(std::unique(balls.begin(), balls.end()), balls.end());
    std::vector<LTBall> maximal;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      bool inside = false;
      for (std::size_t j = 0; j < balls.size() && !inside; ++j) {
        inside = i != j && ball_subset(balls[i], balls[j]);
      }
      if (!inside) maximal.push_back(balls[i]);
    }
    std::map<LTBall, std::size_t> siblings;
    for (const auto& b : maximal) {
      if (b.radius != kInfRadius) ++siblings[parent_of(b)];
    }
    std::vector<LTBall> next;
    bool merged = false;
    for (const auto& [p, count] : siblings) {
      if (count == q) {
        next.push_back(p);
        merged = true;
      }
    }
    if (!merged) {
      balls_ = std::move(maximal);
      return;
    }
    for (const auto& b : maximal) {
      if (b.radius == kInfRadius || siblings[parent_of(b)] != q) next.push_back(b);
    }
    balls = std::move(next);
  }
}

bool lt_contains(const LTContext&, const LTSet& s, const LTElement& x) {
  return std::any_of(s.balls().begin(), s.balls().end(), [&](const LTBall& b) { return ball_contains(b, x); });
}

LTSet lt_add(const LTContext& ctx, const LTElement& x, const LTElement& y) {
  std::vector<LTBall> balls;
  const LTBall bx = ball_of(ctx, x);
  const LTBall by = ball_of(ctx, y);
  for (int s : ctx.scalars) balls.push_back(combine(ctx, bx, scalar_ball(ctx, by, s)));
  return LTSet(ctx, saturate(ctx, std::move(balls)));
}

LTSet lt_add(const LTContext& ctx, const LTSet& s, const LTElement& z) {
  std::vector<LTBall> balls;
  const LTBall bz = ball_of(ctx, z);
  for (const auto& b : s.balls()) balls.push_back(combine(ctx, b, bz));
  return LTSet(ctx, saturate(ctx, std::move(balls)));
}

LTSet lt_scale(const LTContext& ctx, const LTSet& s, const LTElement& x) {
  std::vector<LTBall> balls;
  for (const auto& b : s.balls()) balls.push_back(scale_ball(ctx, b, x));
  return LTSet(ctx, std::move(balls));
}

bool lt_subset(const LTContext&, const LTSet& a, const LTSet& b) {
  return std::all_of(a.balls().begin(), a.balls().end(), [&](const LTBall& x) {
    return std::any_of(b.balls().begin(), b.balls().end(), [&](const LTBall& y) { return ball_subset(x, y); });
  });
}

bool lt_intersects(const LTContext&, const LTSet& a, const LTSet& b) {
  for (const auto& x : a.balls()) {
    for (const auto& y : b.balls()) {
      if (ball_subset(x, y) || ball_subset(y, x)) return true;
    }
  }
  return false;
}

bool lt_is_singleton(const LTContext& ctx, const LTSet& s) {
  std::optional<LTElement> first;
  for (const auto& b : s.balls()) {
    if (!ball_is_leaf(ctx, b)) return false;
    LTElement e;
    if (!b.zero_center) {
      e.zero = false;
      e.value = b.lo;
      e.c = canonical_digits(ctx, b.d);
    }
    if (!first) {
      first = e;
    } else if (!(*first == e)) {
      return false;
    }
  }
  return first.has_value();
}

nlohmann::json lt_set_to_json(const LTContext& ctx, const LTSet& s) {
  if (lt_is_singleton(ctx, s)) {
    const LTBall& b = s.balls().front();
    LTElement e;
    if (!b.zero_center) e = lt_make(ctx, b.lo, std::vector<int>(b.d.begin(), b.d.begin() + len_of(ctx)));
    return {{"kind", "singleton"}, {"element", lt_to_json(ctx, e)}};
  }
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& b : s.balls()) {
    if (b.zero_center) {
      if (b.radius == kInfRadius) {
        parts.push_back({{"kind", "singleton"}, {"element", nullptr}});
      } else {
        parts.push_back({{"kind", "above_value"}, {"cut", Cut::at_most(GroupElem{b.radius - 1}).str()}});
      }
      continue;
    }
    const auto known = static_cast<int>(b.radius - b.lo);
    const int free_digits = len_of(ctx) - known;
    nlohmann::json part{{"kind", "finite"},
                        {"value", b.lo},
                        {"prefix", std::vector<int>(b.d.begin(), b.d.begin() + known)},
                        {"free", free_digits}};
    const std::int64_t size = ipow(ctx.q(), free_digits);
    if (size <= kMaterializeCap) part["size"] = size;
    parts.push_back(part);
  }
  if (parts.size() == 1) return parts[0];
  return {{"kind", "union"}, {"parts", parts}};
}

std::string lt_set_name(const LTContext& ctx, const LTSet& s) {
  std::string out;
  for (const auto& b : s.balls()) {
    if (!out.empty()) out += " | ";
    out += ball_name(ctx, b);
  }
  return "{" + out + "}";
}

std::vector<LTElement> enumerate_window(const LTContext& ctx, std::int64_t bound) {
  if (bound < 0) throw UsageError("window bound must be nonnegative");
  const std::int64_t per_value = (ctx.q() - 1) * ipow(ctx.q(), ctx.gamma);
  if (per_value > static_cast<std::int64_t>(kMaxWindow) ||
      (2 * bound + 1) * per_value / static_cast<std::int64_t>(ctx.scalars.size()) >
          static_cast<std::int64_t>(kMaxWindow)) {
    throw UsageError("window too large");
  }
  std::set<LTElement> out{lt_zero()};
  std::vector<int> digits(static_cast<std::size_t>(len_of(ctx)), 0);
  for (std::int64_t v = -bound; v <= bound; ++v) {
    for (std::int64_t code = 0; code < per_value; ++code) {
      std::int64_t rest = code;
      digits[0] = static_cast<int>(rest % (ctx.q() - 1)) + 1;
      rest /= ctx.q() - 1;
      for (int i = 1; i < len_of(ctx); ++i) {
        digits[i] = static_cast<int>(rest % ctx.q());
        rest /= ctx.q();
      }
      out.insert(lt_make(ctx, v, digits));
    }
  }
  return {out.begin(), out.end()};
}

LTHyperfield::LTHyperfield(LTContext ctx, std::int64_t bound)
    : ctx_(std::move(ctx)), bound_(bound), window_(enumerate_window(ctx_, bound)) {}

LTElement LTHyperfield::one() const {
  std::vector<int> digits(static_cast<std::size_t>(len_of(ctx_)), 0);
  digits[0] = 1;
  return lt_make(ctx_, 0, digits);
}

std::vector<GroupElem> LTHyperfield::value_window() const { return group_window(1, bound_); }

SetShape LTHyperfield::shape(const LTSet& s) const {
  SetShape out;
  std::set<ExtValue> values;
  for (const auto& b : s.balls()) {
    if (!b.zero_center) {
      values.insert(GroupElem{b.lo});
    } else if (b.radius == kInfRadius) {
      values.insert(ExtValue::infinity());
    } else {
      out.above = Cut::at_most(GroupElem{b.radius - 1});
    }
  }
  out.values.assign(values.begin(), values.end());
  return out;
}

std::string LTHyperfield::subject() const {
  std::string s = "K_" + std::to_string(ctx_.gamma) + "(F_" + std::to_string(ctx_.q()) + ")";
  if (!ctx_.trivial_scalars()) s += " mod " + std::to_string(ctx_.scalars.size()) + " scalars";
  return s;
}

nlohmann::json LTHyperfield::window_params() const {
  return {{"backend", "leading-term"}, {"context", ctx_.to_json()}, {"bound", bound_}};
}

// ---------------------------------------------------------------------------

bool CompElement::operator==(const CompElement& o) const {
  if (zero || o.zero) return zero == o.zero;
  return n == o.n && c == o.c;
}

bool CompElement::operator<(const CompElement& o) const {
  if (zero || o.zero) return zero && !o.zero;
  if (n != o.n) return n < o.n;
  return c < o.c;
}

CompSet CompSet::single(CompElement e) {
  CompSet s;
  s.elem = std::move(e);
  return s;
}

CompSet CompSet::above_n(std::int64_t n) {
  CompSet s;
  s.above = true;
  s.n = n;
  return s;
}

bool CompSet::operator==(const CompSet& o) const {
  if (above != o.above) return false;
  return above ? n == o.n : elem == o.elem;
}

bool CompSet::operator<(const CompSet& o) const {
  if (above != o.above) return !above;
  return above ? n < o.n : elem < o.elem;
}

CompElement comp_zero() { return {}; }

CompElement comp_make(std::int64_t n, const mpq_class& c) {
  if (c == 0) throw UsageError("coefficient must be nonzero");
  CompElement e;
  e.zero = false;
  e.n = n;
  e.c = c;
  e.c.canonicalize();
  return e;
}

CompElement comp_make(std::int64_t n, const std::string& c) {
  mpq_class q;
  if (q.set_str(c, 10) != 0) throw UsageError("not a rational: " + c);
  if (q.get_den() == 0) throw UsageError("zero denominator: " + c);
  q.canonicalize();
  return comp_make(n, q);
}

CompElement comp_mul(const CompElement& x, const CompElement& y) {
  if (x.zero || y.zero) return comp_zero();
  return comp_make(x.n + y.n, mpq_class(x.c * y.c));
}

CompElement comp_neg(const CompElement& x) {
  if (x.zero) return x;
  return comp_make(x.n, mpq_class(-x.c));
}

CompElement comp_inv(const CompElement& x) {
  if (x.zero) throw UsageError("zero has no inverse");
  return comp_make(-x.n, mpq_class(1 / x.c));
}

CompSet comp_add(const CompElement& x, const CompElement& y) {
  if (x.zero) return CompSet::single(y);
  if (y.zero) return CompSet::single(x);
  if (x.n != y.n) return CompSet::single(x.n < y.n ? x : y);
  mpq_class s = x.c + y.c;
  if (s != 0) return CompSet::single(comp_make(x.n, s));
  return CompSet::above_n(x.n);
}

bool comp_contains(const CompSet& s, const CompElement& x) {
  if (!s.above) return s.elem == x;
  return x.zero || x.n > s.n;
}

std::int64_t ord_p(const mpq_class& c, int p) {
  if (c == 0) throw UsageError("ord_p of zero");
  std::int64_t k = 0;
  mpz_class num = c.get_num();
  mpz_class den = c.get_den();
  while (num % p == 0) {
    num /= p;
    ++k;
  }
  while (den % p == 0) {
    den /= p;
    --k;
  }
  return k;
}

ExtValue comp_valuation(const CompositeContext& ctx, const CompElement& x) {
  if (x.zero) return ExtValue::infinity();
  return GroupElem{x.n, ord_p(x.c, ctx.p)};
}

Cut comp_norm() { return Cut(2, 1, GroupElem{0}, true); }

std::string comp_name(const CompElement& x) {
  if (x.zero) return "0";
  return "(" + std::to_string(x.n) + ";" + x.c.get_str() + ")";
}

nlohmann::json comp_to_json(const CompElement& x) {
  if (x.zero) return nullptr;
  return {{"n", x.n}, {"c", x.c.get_str()}};
}

nlohmann::json comp_set_to_json(const CompSet& s) {
  if (!s.above) return {{"kind", "singleton"}, {"element", comp_to_json(s.elem)}};
  return {{"kind", "above_value"}, {"cut", Cut(2, 1, GroupElem{s.n}, true).str()}};
}

std::vector<CompElement> enumerate_window(const CompositeContext& ctx, std::int64_t bound,
                                          std::int64_t rational_bound) {
  if (ctx.p < 2) throw UsageError("p must be a prime");
  if (bound < 0 || rational_bound < 1) throw UsageError("window bounds must be positive");
  if ((2 * bound + 1) * 2 * rational_bound * rational_bound > static_cast<std::int64_t>(kMaxWindow)) {
    throw UsageError("window too large");
  }
  std::set<CompElement> out{comp_zero()};
  for (std::int64_t n = -bound; n <= bound; ++n) {
    for (std::int64_t a = -rational_bound; a <= rational_bound; ++a) {
      for (std::int64_t b = 1; b <= rational_bound; ++b) {
        if (a == 0 || std::gcd(a, b) != 1) continue;
        out.insert(comp_make(n, mpq_class(static_cast<long>(a), static_cast<unsigned long>(b))));
      }
    }
  }
  return {out.begin(), out.end()};
}

CompositeHyperfield::CompositeHyperfield(CompositeContext ctx, std::int64_t bound, std::int64_t rational_bound)
    : ctx_(ctx),
      bound_(bound),
      rational_bound_(rational_bound),
      window_(enumerate_window(ctx, bound, rational_bound)) {}

CompSet CompositeHyperfield::add(const CompSet& s, const CompElement& z) const {
  if (!s.above) return comp_add(s.elem, z);
  if (comp_contains(s, z)) return s;
  return CompSet::single(z);
}

CompSet CompositeHyperfield::scale(const CompSet& s, const CompElement& x) const {
  if (x.zero) return CompSet::single(x);
  if (!s.above) return CompSet::single(comp_mul(s.elem, x));
  return CompSet::above_n(s.n + x.n);
}

bool CompositeHyperfield::subset(const CompSet& a, const CompSet& b) const {
  if (!a.above) return comp_contains(b, a.elem);
  return b.above && a.n >= b.n;
}

bool CompositeHyperfield::intersects(const CompSet& a, const CompSet& b) const {
  if (!a.above) return comp_contains(b, a.elem);
  if (!b.above) return comp_contains(a, b.elem);
  return true;
}

std::vector<GroupElem> CompositeHyperfield::value_window() const {
  std::int64_t k = 0;
  for (std::int64_t pk = ctx_.p; pk <= rational_bound_; pk *= ctx_.p) ++k;
  std::vector<GroupElem> out;
  for (std::int64_t n = -bound_; n <= bound_; ++n) {
    for (std::int64_t j = -k; j <= k; ++j) out.push_back(GroupElem{n, j});
  }
  return out;
}

SetShape CompositeHyperfield::shape(const CompSet& s) const {
  SetShape out;
  if (!s.above) {
    out.values.push_back(value(s.elem));
  } else {
    out.above = Cut(2, 1, GroupElem{s.n}, true);
  }
  return out;
}

std::string CompositeHyperfield::name(const CompSet& s) const {
  if (!s.above) return "{" + comp_name(s.elem) + "}";
  return "{n>" + std::to_string(s.n) + "}";
}

std::string CompositeHyperfield::subject() const {
  return "Q(X) leading terms, p = " + std::to_string(ctx_.p);
}

nlohmann::json CompositeHyperfield::window_params() const {
  return {{"backend", "composite"}, {"context", ctx_.to_json()}, {"bound", bound_}, {"rational_bound", rational_bound_}};
}

}  // namespace hyperval
