// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "hyperval/cli.hpp"
#include "hyperval/ltfield.hpp"
#include "hyperval/tropical.hpp"
#include "hyperval/valn.hpp"
#include "oracles.hpp"

using namespace hyperval;

namespace {

constexpr double kAc1Seconds = 10.0;
constexpr double kAc2Seconds = 5.0;
constexpr double kAc6Seconds = 60.0;
constexpr double kAc8Seconds = 30.0;

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok &= cond;
  }
};

bool all_passed = true;

void criterion(const std::string& id, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && secs > limit) {
    o.require(false, "over time limit");
  }
  all_passed &= o.ok;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  std::cout << id << " " << (o.ok ? "PASS" : "FAIL") << " " << buf;
  if (limit > 0) {
    std::snprintf(buf, sizeof buf, " (limit %.0fs)", limit);
    std::cout << buf;
  }
  if (!o.note.empty()) std::cout << " " << o.note;
  std::cout << "\n";
}

std::vector<FiniteHyperfield> small_enumeration() {
  std::vector<FiniteHyperfield> out;
  for (int n : {2, 3, 4}) {
    for (auto& f : enumerate_hyperfields(n)) out.push_back(std::move(f));
  }
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  criterion("AC1", kAc1Seconds, [] {
    Outcome o;
    for (const auto& f : {build_K(), build_S(), build_W()}) o.require(validate(f).passed(), f.meta().dump());
    for (int q : {2, 3, 4, 5, 7, 9}) o.require(validate(build_finite_field(q)).passed(), "F" + std::to_string(q));
    std::size_t quotients = 0;
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11}) {
      const auto k = build_finite_field(q);
      for (int d = 1; d <= q - 1; ++d) {
        if ((q - 1) % d != 0) continue;
        ++quotients;
        o.require(validate(quotient_hyperfield(k, cyclic_subgroup_generators(k, d))).passed(),
                  "quotient of F" + std::to_string(q) + " by order " + std::to_string(d));
      }
    }
    o.require(tropical_axiom_suite(1, false, 3).passed(), "T(Z)");
    o.require(tropical_axiom_suite(1, true, 3).passed(), "T'(Z)");
    o.require(tropical_axiom_suite(2, false, 3).passed(), "T(Z^2)");
    if (o.ok) o.note = std::to_string(quotients) + " quotients";
    return o;
  });

  criterion("AC2", kAc2Seconds, [] {
    Outcome o;
    for (int q : {3, 4, 5, 7, 9}) {
      const auto k = build_finite_field(q);
      o.require(find_isomorphism(quotient_hyperfield(k, cyclic_subgroup_generators(k, q - 1)), build_K()).has_value(),
                "F" + std::to_string(q) + " by all units");
    }
    auto squares_w = [](int p) {
      const auto k = build_finite_field(p);
      return find_isomorphism(quotient_hyperfield(k, cyclic_subgroup_generators(k, (p - 1) / 2)), build_W())
          .has_value();
    };
    for (int p : {7, 11, 19, 23}) o.require(squares_w(p), "squares of F" + std::to_string(p));
    for (int p : {5, 13}) o.require(!squares_w(p), "squares of F" + std::to_string(p) + " matched W");
    return o;
  });

  const auto small = small_enumeration();

  criterion("AC3", 0, [&] {
    Outcome o;
    for (const auto& f : small) o.require(is_field(f) == all_sums_singletons(f), f.meta().dump());
    o.note = std::to_string(small.size()) + " hyperfields";
    return o;
  });

  criterion("AC4", 0, [&] {
    Outcome o;
    for (const auto& f : small) o.require(classify(f).superiorly_canonical == is_field(f), f.meta().dump());
    for (const auto& f : {build_S(), build_W(), build_K()}) {
      const auto c = classify(f);
      const Verdict* v = c.sch.find("SCH1");
      o.require(v && !v->passed && !v->witness.empty(), "SCH1 witness missing");
    }
    return o;
  });

  criterion("AC5", 0, [&] {
    Outcome o;
    const auto k = build_K();
    for (const auto& f : small) {
      const auto c = classify(f);
      o.require((c.stringent && c.char2 && c.cchar1) == find_isomorphism(f, k).has_value(), f.meta().dump());
    }
    return o;
  });

  criterion("AC6", kAc6Seconds, [] {
    Outcome o;
    std::size_t pairs = 0;
    for (int q : {2, 3}) {
      for (int g : {0, 1, 2}) {
        const std::string tag = "q=" + std::to_string(q) + " gamma=" + std::to_string(g);
        const LTHyperfield b(make_lt_context(q, g), 2);
        o.require(oracle::prime_field_matches(b.context()), tag + " field encoding");
        std::vector<LTElement> w = b.window();
        if (std::find(w.begin(), w.end(), lt_zero()) == w.end()) w.push_back(lt_zero());
        for (const auto& x : w) {
          for (const auto& y : w) {
            ++pairs;
            const auto expect = oracle::lt_sum(b.context(), 2, x, y);
            const LTSet s = b.add(x, y);
            for (const auto& z : w) {
              o.require(b.contains(s, z) == (expect.count(z) > 0), tag + " oracle " + b.name(x) + " + " + b.name(y));
            }
          }
        }
        const auto v = Valuation::intrinsic(1);
        const Cut rho = lt_norm(b.context());
        o.require(check_krasner(b, v, rho).passed(), tag + " KVH");
        o.require(check_sch(b).passed(), tag + " SCH");
        const auto res = residue_hyperfield(b, v);
        o.require(res.validation.passed() && is_field(res.field) && res.field.size() == static_cast<std::size_t>(q),
                  tag + " residue");
        o.require(check_ultrametric(b, v, rho).passed(), tag + " ultrametric");
      }
    }
    if (o.ok) o.note = std::to_string(pairs) + " pairs";
    return o;
  });

  criterion("AC7", 0, [] {
    Outcome o;
    const LTHyperfield b(make_lt_context_full_units(3, 1), 3);
    const auto v = Valuation::intrinsic(1);
    const auto res = residue_hyperfield(b, v);
    o.require(res.validation.passed() && find_isomorphism(res.field, build_K()).has_value(), "residue is not K");
    for (std::int64_t m = 0; m <= 5; ++m) {
      o.require(!check_krasner(b, v, Cut::at_most(GroupElem{m})).passed(), "Krasner for m<=" + std::to_string(m));
    }
    o.require(!check_krasner(b, v, Cut::all(1)).passed(), "Krasner for the full norm");
    return o;
  });

  criterion("AC8", kAc8Seconds, [] {
    Outcome o;
    const CompositeHyperfield b({2}, 3, 4);
    const auto w = Valuation::intrinsic(2, "w");
    const Valuation u{"u", ValueMap::projection(2, 1)};
    bool inclusion = true;
    for (const auto& x : b.window()) inclusion &= !in_valuation_ring(b, w, x) || in_valuation_ring(b, u, x);
    o.require(inclusion, "O_w not inside O_u");
    const auto x = comp_make(0, mpq_class(1, 2));
    o.require(in_valuation_ring(b, u, x) && !in_valuation_ring(b, w, x), "witness (0,1/2)");
    o.require(!equivalent(b, w, u), "w and u equivalent");
    o.require(invariance_group(comp_norm()) == ConvexSubgroup{1, 2}, "invariance group");
    o.require(check_krasner(b, w, comp_norm()).passed(), "w not Krasner");
    o.require(check_coarsening_theorem(b, w, comp_norm()).passed(), "coarsening");
    o.note = std::to_string(b.window().size()) + " elements";
    return o;
  });

  criterion("AC9", 0, [] {
    Outcome o;
    for (int g : {0, 1}) {
      const LTHyperfield b(make_lt_context(3, g), 3);
      const auto v = Valuation::intrinsic(1);
      o.require(invariance_group(lt_norm(b.context())) == ConvexSubgroup::trivial(1), "non-trivial ig");
      for (const auto& x : b.window()) {
        o.require(in_induced_ring(b, x) == in_valuation_ring(b, v, x), "gamma=" + std::to_string(g) + " " + b.name(x));
      }
    }
    return o;
  });

  criterion("AC10", 0, [] {
    Outcome o;
    for (int q : {2, 3}) {
      o.require(residue_embedding_check(LTHyperfield(make_lt_context(q, 0), 2)).embedding,
                "q=" + std::to_string(q) + " gamma=0");
      o.require(!residue_embedding_check(LTHyperfield(make_lt_context(q, 1), 2)).embedding,
                "q=" + std::to_string(q) + " gamma=1");
    }
    return o;
  });

  criterion("AC11", 0, [] {
    Outcome o;
    for (const auto& name : cli::scenario_names()) {
      std::ostringstream a, b, err;
      const int ca = cli::run({"scenario", name}, a, err);
      const int cb = cli::run({"scenario", name}, b, err);
      o.require(ca == 0 && cb == 0, name + " exit code");
      o.require(a.str() == b.str(), name + " differs between runs");
      o.require(a.str() == slurp(std::string(HYPERVAL_GOLDEN_DIR) + "/" + name + ".json"), name + " golden");
    }
    return o;
  });

  return all_passed ? 0 : 1;
}
