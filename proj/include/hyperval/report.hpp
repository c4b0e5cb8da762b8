#pragma once

#include <cstddef>
#include <string>
#include <deque>
#include <vector>

#include <json.hpp>

namespace hyperval {

inline constexpr const char* kExhaustive = "proof by exhaustion";
inline constexpr const char* kBounded = "bounded verification";

/// One axiom verdict. A failed verdict always carries a witness.
struct Verdict {
  std::string id;
  bool passed = true;
  std::size_t checked = 0;
  std::vector<int> witness_indices;  // finite carriers only
  std::vector<std::string> witness;  // display names
  std::string note;

  /// Records the first failure; later ones only bump the count.
  void fail(std::vector<std::string> names, std::vector<int> indices = {});
};

struct ValidationReport {
  std::string subject;
  std::string mode = kExhaustive;
  nlohmann::json window = nlohmann::json::object();
  std::deque<Verdict> verdicts;  // stable references across add()

  Verdict& add(const std::string& id);
  const Verdict* find(const std::string& id) const;
  bool passed(const std::string& id) const;
  bool passed() const;
  /// Appends all verdicts of other (ids kept as-is).
  void merge(const ValidationReport& other);
  nlohmann::json to_json() const;
};

}  // namespace hyperval
