#pragma once

#include <cstddef>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "algstat/enumerate.hpp"

namespace algstat {

struct WorkbenchConfig {
  unsigned max_len = 24;       // global table cap L
  unsigned cond_max_len = 22;  // conditional table cap L_c
  Budgets budgets;
  unsigned workers = 1;
  std::size_t max_entries = 5'000'000;
};

// Owns the global complexity table and a cache of conditional tables.
// Conditional tables are keyed by the condition's canonical serialization
// and cap; concurrent requests for the same key build it once.
class Workbench {
 public:
  explicit Workbench(WorkbenchConfig config = {});
  Workbench(WorkbenchConfig config, std::shared_ptr<const ComplexityTable> table);

  const WorkbenchConfig& config() const { return config_; }

  // Built on first use.
  const ComplexityTable& table() const;
  std::shared_ptr<const ComplexityTable> table_ptr() const;

  std::shared_ptr<const ComplexityTable> conditional(const Condition& cond, unsigned max_len) const;
  std::shared_ptr<const ComplexityTable> conditional(const Condition& cond) const {
    return conditional(cond, config_.cond_max_len);
  }
  std::size_t cached_conditionals() const;

  BuildOptions build_options(unsigned max_len) const;

 private:
  WorkbenchConfig config_;
  mutable std::once_flag table_once_;
  mutable std::shared_ptr<const ComplexityTable> table_;
  mutable std::mutex cache_mu_;
  mutable std::map<std::pair<std::string, unsigned>, std::shared_future<std::shared_ptr<const ComplexityTable>>> cache_;
};

}  // namespace algstat
