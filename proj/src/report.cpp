#include "hyperval/report.hpp"

#include <algorithm>

#include "hyperval/errors.hpp"

namespace hyperval {

void Verdict::fail(std::vector<std::string> names, std::vector<int> indices) {
  if (passed) {
    passed = false;
    witness = std::move(names);
    witness_indices = std::move(indices);
  }
}

Verdict& ValidationReport::add(const std::string& id) {
  Verdict v;
  v.id = id;
  verdicts.push_back(std::move(v));
  return verdicts.back();
}

const Verdict* ValidationReport::find(const std::string& id) const {
  auto it = std::find_if(verdicts.begin(), verdicts.end(), [&](const Verdict& v) { return v.id == id; });
  return it == verdicts.end() ? nullptr : &*it;
}

bool ValidationReport::passed(const std::string& id) const {
  const Verdict* v = find(id);
  if (!v) throw UsageError("no verdict with id " + id);
  return v->passed;
}

bool ValidationReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

void ValidationReport::merge(const ValidationReport& other) {
  verdicts.insert(verdicts.end(), other.verdicts.begin(), other.verdicts.end());
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json out;
  out["subject"] = subject;
  out["mode"] = mode;
  out["window"] = window;
  out["passed"] = passed();
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : verdicts) {
    nlohmann::json j{{"id", v.id}, {"passed", v.passed}, {"checked", v.checked}};
    if (!v.passed) {
      j["witness"] = v.witness;
      if (!v.witness_indices.empty()) j["witness_indices"] = v.witness_indices;
    }
    if (!v.note.empty()) j["note"] = v.note;
    vs.push_back(std::move(j));
  }
  out["verdicts"] = std::move(vs);
  return out;
}

}  // namespace hyperval
