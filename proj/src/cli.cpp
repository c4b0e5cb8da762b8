#include "hyperval/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "hyperval/errors.hpp"
#include "hyperval/ltfield.hpp"
#include "hyperval/tropical.hpp"
#include "hyperval/valn.hpp"

namespace hyperval::cli {

FiniteHyperfield load_hyperfield(const std::string& source) {
  const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    const std::string name = source.substr(prefix.size());
    if (name == "K") return build_K();
    if (name == "S") return build_S();
    if (name == "W") return build_W();
    if (name.size() > 1 && name[0] == 'F') {
      try {
        std::size_t used = 0;
        const int q = std::stoi(name.substr(1), &used);
        if (used == name.size() - 1) return build_finite_field(q);
      } catch (const std::logic_error&) {
      }
    }
    throw UsageError("unknown builtin: " + source);
  }
  std::ifstream in(source);
  if (!in) throw UsageError("cannot open " + source);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(source + ": " + e.what());
  }
  return hyperfield_from_json(j);
}

nlohmann::json envelope(const std::string& command, nlohmann::json body) {
  body["report_version"] = kReportVersion;
  body["tool"] = "hyperval";
  body["tool_version"] = kToolVersion;
  body["command"] = command;
  return body;
}

namespace {

struct Claims {
  nlohmann::json list = nlohmann::json::array();
  bool all = true;

  void add(const std::string& id, bool expected, bool observed, nlohmann::json detail = nullptr) {
    nlohmann::json c{{"id", id}, {"expected", expected}, {"observed", observed}, {"passed", expected == observed}};
    if (!detail.is_null()) c["detail"] = std::move(detail);
    all &= expected == observed;
    list.push_back(std::move(c));
  }
};

nlohmann::json first_failure(const ValidationReport& r) {
  for (const auto& v : r.verdicts) {
    if (!v.passed) return {{"axiom", v.id}, {"witness", v.witness}};
  }
  return nullptr;
}

nlohmann::json scenario_body(const std::string& name, const nlohmann::json& params, Claims& c) {
  return {{"scenario", name}, {"params", params}, {"claims", c.list}, {"passed", c.all}};
}

nlohmann::json example_last(const ScenarioParams& p) {
  const CompositeHyperfield b({p.p}, p.bound, p.rational_bound);
  const Valuation w = Valuation::intrinsic(2, "w");
  const Valuation u{"u", ValueMap::projection(2, 1)};
  Claims c;
  c.add("w_is_valuation", true, is_valuation(b, w).passed());
  c.add("u_is_valuation", true, is_valuation(b, u).passed());
  const ValidationReport kr = check_krasner(b, w, comp_norm());
  c.add("w_is_krasner_with_norm", true, kr.passed(), {{"norm", comp_norm().str()}});
  bool inclusion = true;
  for (const auto& x : b.window()) inclusion &= !in_valuation_ring(b, w, x) || in_valuation_ring(b, u, x);
  c.add("O_w_subset_O_u", true, inclusion);
  const CompElement x = comp_make(0, mpq_class(1, p.p));
  c.add("witness_in_O_u_not_O_w", true, in_valuation_ring(b, u, x) && !in_valuation_ring(b, w, x),
        {{"witness", comp_to_json(x)}, {"w", comp_valuation(b.context(), x).str()}});
  c.add("equivalent_w_u", false, equivalent(b, w, u));
  const ConvexSubgroup ig = invariance_group(comp_norm());
  c.add("invariance_group_is_0xZ", true, ig == ConvexSubgroup{1, 2}, {{"invariance_group", ig.str()}});
  bool induced = true;
  for (const auto& y : b.window()) induced &= in_induced_ring(b, y) == in_valuation_ring(b, u, y);
  c.add("induced_ring_equals_O_u", true, induced);
  return scenario_body("example-last", {{"p", p.p}, {"bound", p.bound}, {"rational_bound", p.rational_bound}}, c);
}

nlohmann::json kgamma(const ScenarioParams& p) {
  const LTHyperfield b(make_lt_context(p.q, p.gamma), p.bound);
  const Valuation v = Valuation::intrinsic(1);
  const Cut rho = lt_norm(b.context());
  Claims c;
  c.add("valuation", true, is_valuation(b, v).passed());
  c.add("krasner", true, check_krasner(b, v, rho).passed(), {{"norm", rho.str()}});
  c.add("superiorly_canonical", true, check_sch(b).passed());
  const auto res = residue_hyperfield(b, v);
  const bool iso = res.field.size() == static_cast<std::size_t>(p.q) &&
                   find_isomorphism(res.field, build_finite_field(p.q)).has_value();
  c.add("residue_is_F_q", true, res.validation.passed() && is_field(res.field) && iso,
        {{"order", res.field.size()}});
  c.add("ultrametric", true, check_ultrametric(b, v, rho).passed());
  c.add("induced_ring_equals_O_v", true, check_coarsening_theorem(b, v, rho).passed());
  return scenario_body("kgamma", {{"q", p.q}, {"gamma", p.gamma}, {"bound", p.bound}}, c);
}

nlohmann::json no_kraval(const ScenarioParams& p) {
  const LTHyperfield b(make_lt_context_full_units(p.q, p.gamma), p.bound);
  const Valuation v = Valuation::intrinsic(1);
  Claims c;
  c.add("valuation", true, is_valuation(b, v).passed());
  const auto res = residue_hyperfield(b, v);
  c.add("residue_iso_K", true, res.validation.passed() && find_isomorphism(res.field, build_K()).has_value(),
        {{"order", res.field.size()}});
  c.add("residue_is_field", false, is_field(res.field));
  std::vector<Cut> norms;
  for (std::int64_t m = 0; m <= p.bound + p.gamma + 1; ++m) norms.push_back(Cut::at_most(GroupElem{m}));
  norms.push_back(Cut::all(1));
  bool some_norm = false;
  nlohmann::json tried = nlohmann::json::array();
  for (const auto& rho : norms) {
    const ValidationReport kr = check_krasner(b, v, rho);
    some_norm |= kr.passed();
    tried.push_back({{"norm", rho.str()}, {"failure", first_failure(kr)}});
  }
  c.add("krasner_for_some_norm", false, some_norm, {{"norms", tried}});
  const ValidationReport sch = check_sch(b);
  c.add("superiorly_canonical", false, sch.passed(), first_failure(sch));
  return scenario_body("no-kraval", {{"q", p.q}, {"gamma", p.gamma}, {"bound", p.bound}}, c);
}

nlohmann::json tropical_not_krasner(const ScenarioParams& p) {
  const TropicalHyperfield t(1, false, p.bound);
  const TropicalHyperfield ts(1, true, p.bound);
  const Valuation v = Valuation::intrinsic(1, "id");
  Claims c;
  c.add("identity_is_valuation", true, is_valuation(t, v).passed());
  const TropElem zero_g = GroupElem{0};
  const TropSet s = t_add(zero_g, zero_g, false);
  c.add("sch1_at_0_0", false, !trop_contains(s, zero_g) || s == TropSet::point(zero_g), {{"sum", s.str()}});
  bool some_norm = false;
  nlohmann::json tried = nlohmann::json::array();
  std::vector<Cut> norms;
  for (std::int64_t m = 0; m <= p.bound; ++m) norms.push_back(Cut::at_most(GroupElem{m}));
  norms.push_back(Cut::all(1));
  for (const auto& rho : norms) {
    const ValidationReport kr = check_krasner(t, v, rho);
    some_norm |= kr.passed();
    tried.push_back({{"norm", rho.str()}, {"failure", first_failure(kr)}});
  }
  c.add("krasner_for_some_norm", false, some_norm, {{"norms", tried}});
  c.add("superiorly_canonical", false, check_sch(t).passed());
  c.add("strict_identity_is_krasner", true, check_krasner(ts, v, Cut::at_most(GroupElem{0})).passed());
  const FiniteHyperfield sub = tropical_unit_subhyperfield(1, false);
  c.add("unit_subset_iso_K", true, validate(sub).passed() && find_isomorphism(sub, build_K()).has_value());
  c.add("unit_subset_closed", false, tropical_unit_subset_closed(1, false));
  return scenario_body("tropical-not-krasner", {{"bound", p.bound}}, c);
}

nlohmann::json coarsening_theorem(const ScenarioParams& p) {
  Claims c;
  const CompositeHyperfield b({p.p}, p.bound, p.rational_bound);
  const Valuation w = Valuation::intrinsic(2, "w");
  const ValidationReport r = check_coarsening_theorem(b, w, comp_norm());
  c.add("composite_coarsening", true, r.passed(), r.window);
  const Valuation wd = coarsening(w, invariance_group(comp_norm()));
  c.add("coarsening_is_valuation", true, is_valuation(b, wd).passed());
  for (int gamma : {0, 1}) {
    const LTHyperfield lt(make_lt_context(3, gamma), p.bound);
    const ValidationReport m = check_coarsening_theorem(lt, Valuation::intrinsic(1), lt_norm(lt.context()));
    c.add("kgamma_" + std::to_string(gamma) + "_induced_ring", true, m.passed() && m.find("TRIVIAL_IG_RING") != nullptr);
  }
  return scenario_body("coarsening-theorem", {{"p", p.p}, {"bound", p.bound}, {"rational_bound", p.rational_bound}},
                       c);
}

struct BackendOptions {
  std::string backend = "lt";
  std::string input;
  int q = 3;
  int gamma = 1;
  int p = 2;
  int rank = 1;
  std::int64_t bound = 3;
  std::int64_t rational_bound = 4;
  std::optional<std::int64_t> norm;
};

// Runs f with the chosen backend, its intrinsic valuation and default norm.
template <class F>
int with_backend(const BackendOptions& o, F&& f) {
  auto norm_or = [&](const Cut& dflt, std::size_t rank) {
    if (!o.norm) return dflt;
    GroupElem g(rank);
    g[0] = *o.norm;
    return Cut(rank, 1, g.prefix(1), true);
  };
  if (o.backend == "lt" || o.backend == "nokraval") {
    LTContext ctx = o.backend == "lt" ? make_lt_context(o.q, o.gamma) : make_lt_context_full_units(o.q, o.gamma);
    const LTHyperfield b(ctx, o.bound);
    return f(b, Valuation::intrinsic(1), norm_or(lt_norm(b.context()), 1));
  }
  if (o.backend == "composite") {
    const CompositeHyperfield b({o.p}, o.bound, o.rational_bound);
    return f(b, Valuation::intrinsic(2, "w"), norm_or(comp_norm(), 2));
  }
  if (o.backend == "tropical" || o.backend == "tropical-strict") {
    if (o.rank < 1 || o.rank > 3) throw UsageError("tropical rank must lie in [1, 3]");
    const TropicalHyperfield b(static_cast<std::size_t>(o.rank), o.backend == "tropical-strict", o.bound);
    const auto r = static_cast<std::size_t>(o.rank);
    return f(b, Valuation::intrinsic(r, "id"), norm_or(Cut::at_most(GroupElem::zero(r)), r));
  }
  if (o.backend == "finite") {
    if (o.input.empty()) throw UsageError("finite backend needs an input hyperfield");
    const FiniteBackend b(load_hyperfield(o.input));
    return f(b, Valuation::intrinsic(1), norm_or(Cut::at_most(GroupElem{0}), 1));
  }
  throw UsageError("unknown backend: " + o.backend);
}

void add_backend_options(CLI::App* cmd, BackendOptions& o) {
  cmd->add_option("--backend", o.backend, "lt, nokraval, composite, tropical, tropical-strict or finite")
      ->capture_default_str();
  cmd->add_option("input,--input", o.input, "hyperfield for the finite backend");
  cmd->add_option("--q", o.q, "field size for leading-term backends")->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "truncation level")->capture_default_str();
  cmd->add_option("--p", o.p, "prime for the composite backend")->capture_default_str();
  cmd->add_option("--rank", o.rank, "rank of the tropical value group")->capture_default_str();
  cmd->add_option("--window-bound,--bound", o.bound, "window bound")->capture_default_str();
  cmd->add_option("--rational-bound", o.rational_bound, "numerator and denominator bound")->capture_default_str();
}

void emit(const nlohmann::json& report, const std::string& path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::vector<int> parse_generators(const std::string& spec, const FiniteHyperfield& k) {
  const int q = static_cast<int>(k.size());
  if (spec == "squares") {
    if (q % 2 == 0) throw UsageError("squares subgroup needs odd q");
    return cyclic_subgroup_generators(k, (q - 1) / 2);
  }
  if (spec == "all") return cyclic_subgroup_generators(k, q - 1);
  if (spec == "trivial") return {1};
  const std::string prefix = "gens:";
  if (spec.rfind(prefix, 0) != 0) throw UsageError("subgroup must be squares, all, trivial or gens:a,b,...");
  std::vector<int> gens;
  std::stringstream ss(spec.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      gens.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
      throw UsageError("bad generator: " + item);
    }
    if (gens.back() <= 0 || gens.back() >= q) throw UsageError("generator outside F_q^x: " + item);
  }
  if (gens.empty()) throw UsageError("no generators given");
  return gens;
}

nlohmann::json mask_json(const FiniteHyperfield& f, Mask m) {
  nlohmann::json names = nlohmann::json::array();
  for (int x : members(m)) names.push_back(f.name(x));
  return names;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"example-last", "kgamma", "no-kraval", "tropical-not-krasner",
                                              "coarsening-theorem"};
  return names;
}

nlohmann::json run_scenario(const std::string& name, const ScenarioParams& params) {
  if (name == "example-last") return example_last(params);
  if (name == "kgamma") return kgamma(params);
  if (name == "no-kraval") return no_kraval(params);
  if (name == "tropical-not-krasner") return tropical_not_krasner(params);
  if (name == "coarsening-theorem") return coarsening_theorem(params);
  throw UsageError("unknown scenario: " + name);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Krasner hyperfields and their valuations", "hyperval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  std::string output;
  std::function<int()> action;

  std::string input;
  auto* axioms = app.add_subcommand("axioms", "validate a finite hyperfield");
  axioms->add_option("input,--input", input, "builtin:K|S|W|F<q> or a JSON file")->required();
  axioms->add_option("--output", output);
  axioms->callback([&] {
    action = [&] {
      const ValidationReport r = validate(load_hyperfield(input));
      emit(envelope("axioms", {{"input", input}, {"passed", r.passed()}, {"report", r.to_json()}}), output, out);
      return r.passed() ? kPass : kCheckFailed;
    };
  });

  auto* classify_cmd = app.add_subcommand("classify", "field, characteristic, stringency, SCH1-SCH4");
  classify_cmd->add_option("input,--input", input)->required();
  classify_cmd->add_option("--output", output);
  classify_cmd->callback([&] {
    action = [&] {
      const FiniteHyperfield f = load_hyperfield(input);
      const ValidationReport r = validate(f);
      if (!r.passed()) {
        emit(envelope("classify", {{"input", input}, {"passed", false}, {"report", r.to_json()}}), output, out);
        return kCheckFailed;
      }
      emit(envelope("classify", {{"input", input}, {"passed", true}, {"classification", classify(f).to_json()}}),
           output, out);
      return kPass;
    };
  });

  int field_q = 0;
  std::string subgroup = "squares";
  auto* quotient = app.add_subcommand("quotient", "factor hyperfield (F_q)_T");
  quotient->add_option("--field", field_q, "q")->required();
  quotient->add_option("--subgroup", subgroup, "squares, all, trivial or gens:a,b,...")->capture_default_str();
  quotient->add_option("--output", output);
  quotient->callback([&] {
    action = [&] {
      const FiniteHyperfield k = build_finite_field(field_q);
      const FiniteHyperfield f = quotient_hyperfield(k, parse_generators(subgroup, k));
      emit(to_json(f), output, out);
      return validate(f).passed() ? kPass : kCheckFailed;
    };
  });

  std::string left, right;
  auto* iso = app.add_subcommand("iso", "search for an isomorphism");
  iso->add_option("left", left)->required();
  iso->add_option("right", right)->required();
  iso->add_option("--output", output);
  iso->callback([&] {
    action = [&] {
      const FiniteHyperfield f = load_hyperfield(left);
      const FiniteHyperfield g = load_hyperfield(right);
      const auto m = find_isomorphism(f, g);
      nlohmann::json body{{"left", left}, {"right", right}, {"passed", m.has_value()}};
      if (m) {
        nlohmann::json map = nlohmann::json::object();
        for (std::size_t x = 0; x < m->map.size(); ++x) map[f.name(static_cast<int>(x))] = g.name(m->map[x]);
        body["map"] = map;
      }
      emit(envelope("iso", body), output, out);
      return m ? kPass : kCheckFailed;
    };
  });

  int order = 0;
  int cap = kEnumerationCap;
  std::string group;
  auto* enumerate = app.add_subcommand("enumerate", "hyperfields of a given order up to isomorphism");
  enumerate->add_option("--order", order)->required();
  enumerate->add_option("--group", group, "unit group, e.g. C4 or C2xC2");
  enumerate->add_option("--cap", cap, "largest order accepted")->capture_default_str();
  enumerate->add_option("--output", output);
  enumerate->callback([&] {
    action = [&] {
      const std::vector<FiniteHyperfield> fs =
          group.empty() ? enumerate_hyperfields(order, cap) : enumerate_hyperfields(order, parse_group_descriptor(group), cap);
      nlohmann::json list = nlohmann::json::array();
      for (const auto& f : fs) list.push_back(to_json(f));
      emit(envelope("enumerate", {{"order", order}, {"group", group.empty() ? "any" : group}, {"count", fs.size()},
                                  {"hyperfields", list}, {"passed", true}}),
           output, out);
      return kPass;
    };
  });

  auto* ideals = app.add_subcommand("hyperideals", "list hyperideals of a finite hyperfield");
  ideals->add_option("input,--input", input)->required();
  ideals->add_option("--output", output);
  ideals->callback([&] {
    action = [&] {
      const FiniteHyperfield f = load_hyperfield(input);
      nlohmann::json list = nlohmann::json::array();
      for (Mask m : list_hyperideals(f)) list.push_back(mask_json(f, m));
      const auto cert = non_quotient_certificate(f);
      nlohmann::json body{{"input", input}, {"hyperideals", list}, {"passed", true}};
      body["non_quotient_certificate"] =
          cert ? nlohmann::json{{"reachable", mask_json(f, cert->reachable)}, {"criterion", cert->criterion}}
               : nlohmann::json(nullptr);
      emit(envelope("hyperideals", body), output, out);
      return kPass;
    };
  });

  BackendOptions bo;
  std::int64_t norm_value = 0;
  auto* krasner = app.add_subcommand("krasner", "KVH1 and KVH2 for a backend valuation");
  add_backend_options(krasner, bo);
  auto* norm_opt = krasner->add_option("--norm", norm_value, "norm {m | m_1 <= value}");
  krasner->add_option("--output", output);
  krasner->callback([&] {
    if (norm_opt->count() > 0) bo.norm = norm_value;
    action = [&] {
      return with_backend(bo, [&](const auto& b, const Valuation& v, const Cut& rho) {
        const ValidationReport r = check_krasner(b, v, rho);
        emit(envelope("krasner", {{"passed", r.passed()}, {"report", r.to_json()}}), output, out);
        return r.passed() ? kPass : kCheckFailed;
      });
    };
  });

  auto* residue = app.add_subcommand("residue", "residue hyperfield of a backend valuation");
  add_backend_options(residue, bo);
  residue->add_option("--output", output);
  residue->callback([&] {
    action = [&] {
      return with_backend(bo, [&](const auto& b, const Valuation& v, const Cut&) {
        const auto res = residue_hyperfield(b, v);
        const bool ok = res.validation.passed();
        emit(envelope("residue", {{"subject", b.subject()},
                                  {"window", b.window_params()},
                                  {"passed", ok},
                                  {"is_field", is_field(res.field)},
                                  {"residue", to_json(res.field)},
                                  {"validation", res.validation.to_json()}}),
             output, out);
        return ok ? kPass : kCheckFailed;
      });
    };
  });

  std::size_t delta_index = 1;
  auto* coarsen = app.add_subcommand("coarsen", "coarsening by a convex subgroup");
  add_backend_options(coarsen, bo);
  coarsen->add_option("--delta", delta_index, "keep this many leading value coordinates")->capture_default_str();
  coarsen->add_option("--output", output);
  coarsen->callback([&] {
    action = [&] {
      return with_backend(bo, [&](const auto& b, const Valuation& v, const Cut&) {
        const std::size_t rank = v.map.keep;
        if (delta_index > rank) throw UsageError("--delta exceeds the value group rank");
        const ConvexSubgroup delta{delta_index, rank};
        const Valuation vd = coarsening(v, delta);
        const ValidationReport r = is_valuation(b, vd);
        bool inclusion = true;
        for (const auto& x : b.window()) inclusion &= !in_valuation_ring(b, v, x) || in_valuation_ring(b, vd, x);
        const bool ok = r.passed() && inclusion;
        emit(envelope("coarsen", {{"delta", delta.str()},
                                  {"passed", ok},
                                  {"ring_inclusion", inclusion},
                                  {"report", r.to_json()}}),
             output, out);
        return ok ? kPass : kCheckFailed;
      });
    };
  });

  std::string scenario_name;
  ScenarioParams sp;
  auto* scenario = app.add_subcommand("scenario", "named end-to-end checks");
  scenario->add_option("name", scenario_name)->required()->check(CLI::IsMember(scenario_names()));
  scenario->add_option("--p", sp.p)->capture_default_str();
  scenario->add_option("--q", sp.q)->capture_default_str();
  scenario->add_option("--gamma", sp.gamma)->capture_default_str();
  scenario->add_option("--window-bound,--bound", sp.bound)->capture_default_str();
  scenario->add_option("--rational-bound", sp.rational_bound)->capture_default_str();
  scenario->add_option("--output", output);
  scenario->callback([&] {
    action = [&] {
      const nlohmann::json r = run_scenario(scenario_name, sp);
      emit(envelope("scenario", r), output, out);
      return r["passed"].get<bool>() ? kPass : kCheckFailed;
    };
  });

  std::vector<std::string> argv_store{"hyperval"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace hyperval::cli
