#pragma once

// Axiom checks over a finite window of an infinite hyperfield.
//
// A backend exposes elements, a canonical set type for hypersums, and a
// finite window of elements that all quantifiers range over:
//
//   using Elem, Set;                       both ==, < comparable
//   Elem zero(), one();
//   const std::vector<Elem>& window();
//   Set add(Elem, Elem); Set add(Set, Elem); Set scale(Set, Elem);
//   Elem mul(Elem, Elem), neg(Elem), inv(Elem);
//   bool contains(Set, Elem), subset(Set, Set), intersects(Set, Set), is_singleton(Set);
//   std::string name(Elem), name(Set);
//   std::string subject(); nlohmann::json window_params();
//
// Valued backends additionally provide rank(), value(Elem), shape(Set) and
// optionally value_window(). exhaustive() marks a window that is the whole carrier.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hyperval/oag.hpp"
#include "hyperval/report.hpp"

namespace hyperval {

/// Values taken by a hypersum: finitely many explicit values, plus optionally
/// every element whose value lies above a cut (this part always contains 0).
struct SetShape {
  std::vector<ExtValue> values;
  std::optional<Cut> above;
};

struct WindowClassification {
  bool char2 = false;
  bool cchar1 = false;
  bool stringent = false;
  bool superiorly_canonical = false;
  ValidationReport sch;
};

/// Window data shared by the checks: indices, negation and all pair sums.
template <class B>
class WindowTables {
 public:
  using Elem = typename B::Elem;
  using Set = typename B::Set;

  explicit WindowTables(const B& b) : b_(b), w_(b.window()), n_(static_cast<int>(w_.size())) {
    for (int i = 0; i < n_; ++i) index_.emplace(w_[i], i);
    neg_.resize(n_);
    for (int i = 0; i < n_; ++i) neg_[i] = b.neg(w_[i]);
    sums_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) sums_.push_back(b.add(w_[i], w_[j]));
    }
  }

  int size() const { return n_; }
  const Elem& at(int i) const { return w_[i]; }
  const Set& sum(int i, int j) const { return sums_[static_cast<std::size_t>(i) * n_ + j]; }
  const Elem& neg(int i) const { return neg_[i]; }
  /// x - y, through the sum table when -y is in the window.
  Set diff(int i, int j) const {
    auto it = index_.find(neg_[j]);
    return it != index_.end() ? sum(i, it->second) : b_.add(w_[i], neg_[j]);
  }
  std::optional<int> index(const Elem& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::string name(int i) const { return b_.name(w_[i]); }

 private:
  const B& b_;
  const std::vector<Elem>& w_;
  int n_;
  std::map<Elem, int> index_;
  std::vector<Elem> neg_;
  std::vector<Set> sums_;
};

template <class B>
ValidationReport window_report(const B& b) {
  ValidationReport r;
  r.subject = b.subject();
  r.mode = kBounded;
  r.window = b.window_params();
  r.window["elements"] = b.window().size();
  if constexpr (requires { b.exhaustive(); }) {
    if (b.exhaustive()) r.mode = kExhaustive;
  }
  return r;
}

/// CH1-CH4, neutrality, HR3 and the multiplicative group on the window.
template <class B>
ValidationReport check_hyperfield_axioms(const B& b) {
  WindowTables<B> t(b);
  const int n = t.size();
  ValidationReport r = window_report(b);
  const auto zero = b.zero();
  const auto one = b.one();

  Verdict& ch1 = r.add("CH1");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        ++ch1.checked;
        if (!(b.add(t.sum(x, y), t.at(z)) == b.add(t.sum(y, z), t.at(x)))) {
          ch1.fail({t.name(x), t.name(y), t.name(z)}, {x, y, z});
        }
      }
    }
  }
  Verdict& ch2 = r.add("CH2");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      ++ch2.checked;
      if (!(t.sum(x, y) == t.sum(y, x))) ch2.fail({t.name(x), t.name(y)}, {x, y});
    }
  }
  Verdict& neutral = r.add("NEUTRAL");
  for (int x = 0; x < n; ++x) {
    ++neutral.checked;
    auto s = b.add(t.at(x), zero);
    if (!b.is_singleton(s) || !b.contains(s, t.at(x))) neutral.fail({t.name(x)}, {x});
  }
  Verdict& ch3 = r.add("CH3");
  for (int x = 0; x < n; ++x) {
    ++ch3.checked;
    int count = 0;
    for (int y = 0; y < n; ++y) {
      if (b.contains(t.sum(x, y), zero)) ++count;
    }
    if (count != 1 || !b.contains(b.add(t.at(x), t.neg(x)), zero)) ch3.fail({t.name(x)}, {x});
  }
  Verdict& ch4 = r.add("CH4");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        if (!b.contains(t.sum(x, y), t.at(z))) continue;
        ++ch4.checked;
        if (!b.contains(t.diff(z, x), t.at(y))) ch4.fail({t.name(x), t.name(y), t.name(z)}, {x, y, z});
      }
    }
  }
  Verdict& hr3 = r.add("HR3");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        ++hr3.checked;
        const auto& a = t.at(x);
        if (!(b.scale(t.sum(y, z), a) == b.add(b.mul(a, t.at(y)), b.mul(a, t.at(z))))) {
          hr3.fail({t.name(x), t.name(y), t.name(z)}, {x, y, z});
        }
      }
    }
  }
  Verdict& grp = r.add("MULGROUP");
  for (int x = 0; x < n; ++x) {
    const auto& a = t.at(x);
    ++grp.checked;
    if (!(b.mul(a, zero) == zero) || !(b.mul(a, one) == a)) grp.fail({t.name(x)}, {x});
    if (a == zero) continue;
    if (!(b.mul(a, b.inv(a)) == one)) grp.fail({t.name(x)}, {x});
    for (int y = 0; y < n; ++y) {
      ++grp.checked;
      const auto& c = t.at(y);
      if (!(b.mul(a, c) == b.mul(c, a))) grp.fail({t.name(x), t.name(y)}, {x, y});
      if (!(c == zero) && b.mul(a, c) == zero) grp.fail({t.name(x), t.name(y)}, {x, y});
    }
  }
  return r;
}

/// SCH1-SCH4 on the window. SCH2 compares each pair of distinct sums once.
template <class B>
ValidationReport check_sch(const B& b) {
  WindowTables<B> t(b);
  const int n = t.size();
  ValidationReport r = window_report(b);

  Verdict& s1 = r.add("SCH1");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      ++s1.checked;
      const auto& s = t.sum(x, y);
      if (b.contains(s, t.at(x)) && !b.is_singleton(s)) s1.fail({t.name(x), t.name(y)}, {x, y});
    }
  }

  Verdict& s2 = r.add("SCH2");
  std::map<typename B::Set, std::pair<int, int>> distinct;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) distinct.emplace(t.sum(x, y), std::make_pair(x, y));
  }
  for (auto i = distinct.begin(); i != distinct.end(); ++i) {
    for (auto j = std::next(i); j != distinct.end(); ++j) {
      ++s2.checked;
      if (!b.intersects(i->first, j->first)) continue;
      if (b.subset(i->first, j->first) || b.subset(j->first, i->first)) continue;
      const auto [x, y] = i->second;
      const auto [z, w] = j->second;
      s2.fail({t.name(x), t.name(y), t.name(z), t.name(w)}, {x, y, z, w});
    }
  }

  std::vector<typename B::Set> self;
  self.reserve(n);
  for (int x = 0; x < n; ++x) self.push_back(t.diff(x, x));

  Verdict& s3 = r.add("SCH3");
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      const auto d = t.diff(x, y);
      int first = -1;
      for (int z = 0; z < n; ++z) {
        if (!b.contains(d, t.at(z))) continue;
        ++s3.checked;
        if (first < 0) {
          first = z;
        } else if (!(self[z] == self[first])) {
          s3.fail({t.name(x), t.name(y), t.name(first), t.name(z)}, {x, y, first, z});
        }
      }
    }
  }

  Verdict& s4 = r.add("SCH4");
  std::vector<char> in(static_cast<std::size_t>(n) * n);
  std::vector<char> sub(static_cast<std::size_t>(n) * n);
  for (int z = 0; z < n; ++z) {
    for (int x = 0; x < n; ++x) {
      in[static_cast<std::size_t>(z) * n + x] = b.contains(self[z], t.at(x));
      sub[static_cast<std::size_t>(x) * n + z] = b.subset(self[x], self[z]);
    }
  }
  for (int z = 0; z < n; ++z) {
    for (int x = 0; x < n; ++x) {
      if (!in[static_cast<std::size_t>(z) * n + x]) continue;
      for (int y = 0; y < n; ++y) {
        if (in[static_cast<std::size_t>(z) * n + y]) continue;
        ++s4.checked;
        if (!sub[static_cast<std::size_t>(x) * n + y]) s4.fail({t.name(x), t.name(y), t.name(z)}, {x, y, z});
      }
    }
  }
  return r;
}

template <class B>
WindowClassification classify_window(const B& b) {
  WindowClassification c;
  const auto one_one = b.add(b.one(), b.one());
  c.char2 = b.contains(one_one, b.zero());
  c.cchar1 = b.contains(one_one, b.one());
  c.stringent = true;
  for (const auto& x : b.window()) {
    for (const auto& y : b.window()) {
      auto s = b.add(x, y);
      if (!b.contains(s, b.zero()) && !b.is_singleton(s)) c.stringent = false;
    }
  }
  c.sch = check_sch(b);
  c.superiorly_canonical = c.sch.passed();
  return c;
}

}  // namespace hyperval
