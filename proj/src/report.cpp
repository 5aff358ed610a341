#include "mvbasis/report.hpp"

#include <map>

namespace mvbasis {

Report merge_by_name(const std::vector<Report>& parts, const std::vector<std::string>& labels,
                     std::size_t max_examples) {
  Report out;
  std::map<std::string, std::size_t> slot;
  std::map<std::string, std::size_t> items, skipped;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const CheckResult& c : parts[i].checks) {
      auto [it, fresh] = slot.try_emplace(c.name, out.checks.size());
      if (fresh) {
        CheckResult blank;
        blank.name = c.name;
        blank.status = CheckStatus::skip;
        out.checks.push_back(blank);
      }
      CheckResult& m = out.checks[it->second];
      ++items[c.name];
      m.cases += c.cases;
      if (c.status == CheckStatus::skip) {
        ++skipped[c.name];
      } else if (c.status == CheckStatus::fail) {
        m.status = CheckStatus::fail;
      } else if (m.status == CheckStatus::skip) {
        m.status = CheckStatus::pass;
      }
      const std::string& label = i < labels.size() ? labels[i] : std::string();
      for (const auto& ce : c.counterexamples) {
        if (m.counterexamples.size() >= max_examples) break;
        m.counterexamples.push_back(label.empty() ? ce : label + ": " + ce);
      }
    }
  }
  for (CheckResult& m : out.checks) {
    m.detail = std::to_string(items[m.name]) + " items";
    if (skipped[m.name] > 0) m.detail += ", " + std::to_string(skipped[m.name]) + " skipped";
  }
  return out;
}

}  // namespace mvbasis
