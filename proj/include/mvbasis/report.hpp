#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mvbasis {

enum class CheckStatus { pass, fail, skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "?";
}

/// Outcome of one named verification. Counterexamples are capped by the producer.
struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
  std::size_t cases = 0;
  std::vector<std::string> counterexamples;

  bool ok() const { return status != CheckStatus::fail; }
};

struct Report {
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks) {
      if (!c.ok()) return false;
    }
    return true;
  }

  void append(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }
};

/// Accumulates cases for one check; stops recording counterexamples after `max_examples`.
class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name, std::size_t max_examples = 10)
      : max_examples_(max_examples) {
    result_.name = std::move(name);
  }

  void expect(bool condition, const std::string& counterexample) {
    ++result_.cases;
    if (condition) return;
    result_.status = CheckStatus::fail;
    if (result_.counterexamples.size() < max_examples_) result_.counterexamples.push_back(counterexample);
  }

  template <class F>
  void expect_lazy(bool condition, F&& describe) {
    ++result_.cases;
    if (condition) return;
    result_.status = CheckStatus::fail;
    if (result_.counterexamples.size() < max_examples_) result_.counterexamples.push_back(describe());
  }

  void skip(std::string why) {
    if (result_.status == CheckStatus::pass && result_.cases == 0) result_.status = CheckStatus::skip;
    result_.detail = std::move(why);
  }

  void set_detail(std::string detail) { result_.detail = std::move(detail); }

  CheckResult finish() const { return result_; }

 private:
  CheckResult result_;
  std::size_t max_examples_;
};

/// Folds per-item reports into one check per name, in first-seen order. Counterexamples
/// are prefixed with the item label.
Report merge_by_name(const std::vector<Report>& parts, const std::vector<std::string>& labels,
                     std::size_t max_examples = 10);

}  // namespace mvbasis
