#include "hyperval/oag.hpp"

#include <algorithm>
#include <sstream>

namespace hyperval {

namespace {

void check_rank(std::size_t n) {
  if (n > kMaxRank) throw UsageError("group rank " + std::to_string(n) + " exceeds " + std::to_string(kMaxRank));
}

void same_rank(const GroupElem& a, const GroupElem& b) {
  if (a.rank() != b.rank()) {
    throw UsageError("rank mismatch: " + a.str() + " vs " + b.str());
  }
}

}  // namespace

GroupElem::GroupElem(std::size_t rank) : rank_(static_cast<std::uint8_t>(rank)) { check_rank(rank); }

GroupElem::GroupElem(std::initializer_list<std::int64_t> coords) {
  check_rank(coords.size());
  rank_ = static_cast<std::uint8_t>(coords.size());
  std::copy(coords.begin(), coords.end(), c_.begin());
}

GroupElem::GroupElem(const std::vector<std::int64_t>& coords) {
  check_rank(coords.size());
  rank_ = static_cast<std::uint8_t>(coords.size());
  std::copy(coords.begin(), coords.end(), c_.begin());
}

GroupElem GroupElem::unit(std::size_t rank, std::size_t i) {
  GroupElem g(rank);
  g.c_[i] = 1;
  return g;
}

std::vector<std::int64_t> GroupElem::coords() const { return {c_.begin(), c_.begin() + rank_}; }

bool GroupElem::is_zero() const {
  return std::all_of(c_.begin(), c_.begin() + rank_, [](std::int64_t x) { return x == 0; });
}

GroupElem GroupElem::prefix(std::size_t k) const {
  if (k > rank_) throw UsageError("prefix longer than rank");
  GroupElem g(k);
  std::copy(c_.begin(), c_.begin() + k, g.c_.begin());
  return g;
}

GroupElem GroupElem::operator+(const GroupElem& o) const {
  same_rank(*this, o);
  GroupElem g(rank_);
  for (std::size_t i = 0; i < rank_; ++i) g.c_[i] = c_[i] + o.c_[i];
  return g;
}

GroupElem GroupElem::operator-(const GroupElem& o) const {
  same_rank(*this, o);
  GroupElem g(rank_);
  for (std::size_t i = 0; i < rank_; ++i) g.c_[i] = c_[i] - o.c_[i];
  return g;
}

GroupElem GroupElem::operator-() const {
  GroupElem g(rank_);
  for (std::size_t i = 0; i < rank_; ++i) g.c_[i] = -c_[i];
  return g;
}

GroupElem GroupElem::scaled(std::int64_t c) const {
  GroupElem g(rank_);
  for (std::size_t i = 0; i < rank_; ++i) g.c_[i] = c * c_[i];
  return g;
}

bool GroupElem::operator==(const GroupElem& o) const {
  return rank_ == o.rank_ && std::equal(c_.begin(), c_.begin() + rank_, o.c_.begin());
}

bool GroupElem::operator<(const GroupElem& o) const { return lex_compare(*this, o) == Ordering::LT; }

std::string GroupElem::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < rank_; ++i) os << (i ? "," : "") << c_[i];
  os << ')';
  return os.str();
}

Ordering lex_compare(const GroupElem& a, const GroupElem& b) {
  same_rank(a, b);
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a[i] < b[i]) return Ordering::LT;
    if (a[i] > b[i]) return Ordering::GT;
  }
  return Ordering::EQ;
}

const GroupElem& ExtValue::finite() const {
  if (!g_) throw UsageError("infinite value has no group element");
  return *g_;
}

bool ExtValue::operator<(const ExtValue& o) const { return ext_compare(*this, o) == Ordering::LT; }

ExtValue ExtValue::operator+(const ExtValue& o) const {
  if (is_infinite() || o.is_infinite()) return infinity();
  return ExtValue(*g_ + *o.g_);
}

std::string ExtValue::str() const { return g_ ? g_->str() : std::string("inf"); }

Ordering ext_compare(const ExtValue& a, const ExtValue& b) {
  if (a.is_infinite()) return b.is_infinite() ? Ordering::EQ : Ordering::GT;
  if (b.is_infinite()) return Ordering::LT;
  return lex_compare(a.finite(), b.finite());
}

ExtValue ext_min(const ExtValue& a, const ExtValue& b) { return b < a ? b : a; }

bool ConvexSubgroup::contains(const GroupElem& g) const {
  if (g.rank() != rank) throw UsageError("rank mismatch in convex subgroup membership");
  for (std::size_t i = 0; i < suffix_index; ++i) {
    if (g[i] != 0) return false;
  }
  return true;
}

std::string ConvexSubgroup::str() const {
  std::string s;
  for (std::size_t i = 0; i < rank; ++i) s += (i ? "x" : "") + std::string(i < suffix_index ? "{0}" : "Z");
  return rank == 0 ? "{0}" : s;
}

Cut::Cut(std::size_t rank, std::size_t prefix_len, GroupElem bound, bool inclusive)
    : bound_(std::move(bound)), rank_(rank), len_(prefix_len), inclusive_(inclusive) {
  check_rank(rank);
  if (prefix_len > rank) throw UsageError("cut prefix longer than group rank");
  if (bound_.rank() != prefix_len) throw UsageError("cut bound length must equal prefix_len");
}

Cut Cut::normalized() const {
  if (len_ == 0 || inclusive_) return *this;
  // { prefix < b } == { prefix <= b - e_k } in Z^k lex.
  GroupElem b = bound_;
  b[len_ - 1] -= 1;
  return Cut(rank_, len_, b, true);
}

bool Cut::operator==(const Cut& o) const {
  Cut a = normalized();
  Cut b = o.normalized();
  return a.rank_ == b.rank_ && a.len_ == b.len_ && a.inclusive_ == b.inclusive_ && a.bound_ == b.bound_;
}

std::string Cut::str() const {
  if (is_all()) return "all";
  if (is_empty()) return "empty";
  std::ostringstream os;
  os << "{m | m[0.." << len_ << ") " << (inclusive_ ? "<=" : "<") << ' ' << bound_.str() << '}';
  return os.str();
}

bool cut_contains(const Cut& rho, const GroupElem& g) {
  if (g.rank() != rho.rank()) throw UsageError("rank mismatch in cut membership");
  if (rho.prefix_len() == 0) return rho.inclusive();
  switch (lex_compare(g.prefix(rho.prefix_len()), rho.bound())) {
    case Ordering::LT: return true;
    case Ordering::EQ: return rho.inclusive();
    case Ordering::GT: return false;
  }
  return false;
}

bool above_cut(const Cut& rho, const ExtValue& v) { return v.is_infinite() || !cut_contains(rho, v.finite()); }

Cut cut_shift(const Cut& rho, const GroupElem& g) {
  if (g.rank() != rho.rank()) throw UsageError("rank mismatch in cut shift");
  if (rho.prefix_len() == 0) return rho;
  return Cut(rho.rank(), rho.prefix_len(), rho.bound() + g.prefix(rho.prefix_len()), rho.inclusive());
}

namespace {

// Boundary position of a normalized cut as a padded sequence over Z u {-inf,+inf};
// inclusion of cuts is lexicographic order of positions.
struct Position {
  std::vector<std::int64_t> coords;
  std::vector<int> inf;  // -1, 0 (finite) or +1
};

Position position(const Cut& c) {
  Cut n = c.normalized();
  Position p;
  for (std::size_t i = 0; i < n.rank(); ++i) {
    if (i < n.prefix_len()) {
      p.coords.push_back(n.bound()[i]);
      p.inf.push_back(0);
    } else {
      p.coords.push_back(0);
      p.inf.push_back(n.inclusive() ? 1 : -1);
    }
  }
  return p;
}

}  // namespace

bool cut_subset(const Cut& rho1, const Cut& rho2) {
  if (rho1.rank() != rho2.rank()) throw UsageError("rank mismatch in cut comparison");
  Position a = position(rho1);
  Position b = position(rho2);
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    if (a.inf[i] != b.inf[i]) {
      if (a.inf[i] == 0 && b.inf[i] == 0) break;
      return a.inf[i] < b.inf[i];
    }
    if (a.inf[i] != 0) return true;  // both infinite with the same sign: equal tails
    if (a.coords[i] != b.coords[i]) return a.coords[i] < b.coords[i];
  }
  return true;
}

ConvexSubgroup invariance_group(const Cut& rho) {
  Cut n = rho.normalized();
  return ConvexSubgroup{n.prefix_len(), n.rank()};
}

GroupElem quotient_by_convex(const GroupElem& g, const ConvexSubgroup& delta) {
  if (g.rank() != delta.rank) throw UsageError("rank mismatch in quotient");
  return g.prefix(delta.suffix_index);
}

GroupElem ValueMap::apply(const GroupElem& g) const {
  if (g.rank() != source_rank) throw UsageError("value map applied to wrong rank");
  return g.prefix(keep).scaled(scale);
}

ExtValue ValueMap::apply(const ExtValue& v) const {
  if (v.is_infinite()) return v;
  return ExtValue(apply(v.finite()));
}

ValueMap ValueMap::after(const ValueMap& inner) const {
  if (inner.keep != source_rank) throw UsageError("value maps do not compose");
  return ValueMap{inner.source_rank, keep, scale * inner.scale};
}

Cut ValueMap::preimage(const Cut& rho) const {
  if (rho.rank() != keep) throw UsageError("cut rank does not match value map target");
  if (scale <= 0) throw UsageError("value map scale must be positive");
  if (rho.prefix_len() == 0) return rho.inclusive() ? Cut::all(source_rank) : Cut::empty(source_rank);
  // scale*u compared to b: walk coordinates while b_i is divisible by scale.
  const GroupElem& b = rho.bound();
  GroupElem pre(rho.prefix_len());
  for (std::size_t i = 0; i < rho.prefix_len(); ++i) {
    std::int64_t q = b[i] / scale;
    std::int64_t r = b[i] % scale;
    if (r < 0) {
      q -= 1;
      r += scale;
    }
    pre[i] = q;
    if (r != 0) {
      // scale*u_i can never equal b_i: u_i <= floor(b_i / scale) decides.
      GroupElem bound = pre.prefix(i + 1);
      return Cut(source_rank, i + 1, bound, true);
    }
  }
  return Cut(source_rank, rho.prefix_len(), pre, rho.inclusive());
}

std::string ValueMap::str() const {
  std::ostringstream os;
  os << scale << "*prefix" << keep << "(Z^" << source_rank << ")";
  return os.str();
}

std::vector<GroupElem> group_window(std::size_t rank, std::int64_t bound) {
  if (bound < 0) throw UsageError("window bound must be non-negative");
  std::vector<GroupElem> out;
  GroupElem g(rank);
  for (std::size_t i = 0; i < rank; ++i) g[i] = -bound;
  while (true) {
    out.push_back(g);
    std::size_t i = rank;
    while (i > 0) {
      --i;
      if (g[i] < bound) {
        ++g[i];
        break;
      }
      g[i] = -bound;
      if (i == 0) return out;
    }
    if (rank == 0) return out;
  }
}

bool is_convex_on_window(const std::function<bool(const GroupElem&)>& member, std::size_t rank,
                         std::int64_t bound) {
  auto box = group_window(rank, bound);
  std::vector<GroupElem> in;
  for (const auto& g : box) {
    if (member(g)) in.push_back(g);
  }
  if (in.empty()) return true;
  // box is sorted, so membership between the extreme members settles convexity.
  const GroupElem& lo = in.front();
  const GroupElem& hi = in.back();
  for (const auto& g : box) {
    if (lo < g && g < hi && !member(g)) return false;
  }
  return true;
}

}  // namespace hyperval
