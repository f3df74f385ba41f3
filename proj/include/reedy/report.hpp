#pragma once

#include <string>
#include <vector>

namespace reedy {

// Outcome of a verification: a verdict plus human-readable findings.
struct Report {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  void fail(std::string msg) {
    pass = false;
    failures.push_back(std::move(msg));
  }
  void note(std::string msg) { notes.push_back(std::move(msg)); }
  void absorb(const Report& other, const std::string& prefix = {}) {
    for (auto& f : other.failures) fail(prefix + f);
    for (auto& n : other.notes) note(prefix + n);
  }
};

}  // namespace reedy
