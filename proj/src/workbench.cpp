#include "algstat/workbench.hpp"

namespace algstat {

Workbench::Workbench(WorkbenchConfig config) : config_(config) {}

Workbench::Workbench(WorkbenchConfig config, std::shared_ptr<const ComplexityTable> table)
    : config_(config), table_(std::move(table)) {
  if (table_ && (table_->max_len() != config_.max_len || !(table_->budgets() == config_.budgets))) {
    throw std::invalid_argument("workbench: table caps do not match configuration");
  }
}

BuildOptions Workbench::build_options(unsigned max_len) const {
  BuildOptions o;
  o.max_len = max_len;
  o.budgets = config_.budgets;
  o.workers = config_.workers;
  o.max_entries = config_.max_entries;
  return o;
}

const ComplexityTable& Workbench::table() const { return *table_ptr(); }

std::shared_ptr<const ComplexityTable> Workbench::table_ptr() const {
  std::call_once(table_once_, [&] {
    if (!table_) table_ = std::make_shared<const ComplexityTable>(build_table(build_options(config_.max_len), Condition::none()));
  });
  return table_;
}

std::shared_ptr<const ComplexityTable> Workbench::conditional(const Condition& cond, unsigned max_len) const {
  std::promise<std::shared_ptr<const ComplexityTable>> promise;
  std::shared_future<std::shared_ptr<const ComplexityTable>> future;
  bool builder = false;
  {
    std::lock_guard lock(cache_mu_);
    auto key = std::make_pair(cond.canonical(), max_len);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      future = promise.get_future().share();
      cache_.emplace(std::move(key), future);
      builder = true;
    } else {
      future = it->second;
    }
  }
  if (builder) {
    try {
      promise.set_value(std::make_shared<const ComplexityTable>(build_table(build_options(max_len), cond)));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::size_t Workbench::cached_conditionals() const {
  std::lock_guard lock(cache_mu_);
  return cache_.size();
}

}  // namespace algstat
