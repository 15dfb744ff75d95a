#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algstat/bitstring.hpp"
#include "algstat/machine.hpp"
#include "algstat/numeric.hpp"

namespace algstat {

struct HaltingProgram {
  BitString program;
  BitString output;
  std::uint64_t steps = 0;
};

struct BuildOptions {
  unsigned max_len = 24;
  Budgets budgets;
  unsigned workers = 1;
  std::size_t max_entries = 5'000'000;
};

// All halting programs of length <= max_len, in (length, lexicographic)
// order. Walks the opcode decode tree rather than raw bit strings.
std::vector<HaltingProgram> enumerate_halting(unsigned max_len, const Condition& cond, const Budgets& budgets);

struct TableEntry {
  BitString output;
  unsigned k = 0;
  BitString witness;  // first shortest program in (length, lex) order
  Dyadic m;           // sum of 2^-l(p) over halting p with this output
  std::vector<std::pair<unsigned, std::uint64_t>> histogram;  // (length, program count), ascending

  friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

// Exact map output -> (K, witness, m) for one (machine, condition, caps).
// Immutable once built; safe to share across threads.
class ComplexityTable {
 public:
  ComplexityTable(unsigned max_len, Budgets budgets, std::string cond_fingerprint, std::vector<TableEntry> entries);

  unsigned max_len() const { return max_len_; }
  const Budgets& budgets() const { return budgets_; }
  const std::string& condition_fingerprint() const { return fingerprint_; }

  // Canonical order of outputs.
  const std::vector<TableEntry>& entries() const { return entries_; }
  const TableEntry* find(const BitString& x) const;
  std::optional<unsigned> k_of(const BitString& x) const;
  std::uint64_t program_count() const;

  friend bool operator==(const ComplexityTable& a, const ComplexityTable& b) {
    return a.max_len_ == b.max_len_ && a.budgets_ == b.budgets_ && a.fingerprint_ == b.fingerprint_ &&
           a.entries_ == b.entries_;
  }

 private:
  unsigned max_len_;
  Budgets budgets_;
  std::string fingerprint_;
  std::vector<TableEntry> entries_;
  std::unordered_map<BitString, std::size_t, BitStringHash> index_;
};

// Parallel over disjoint decode subtrees; the merge is order-independent,
// so the result does not depend on options.workers.
ComplexityTable build_table(const BuildOptions& options, const Condition& cond);

// Sum over entries of m(x); equals the halting probability restricted to
// programs of length <= max_len.
Dyadic kraft_sum(const ComplexityTable& table);

void write_table(const ComplexityTable& table, std::ostream& out);
ComplexityTable read_table(std::istream& in);
void export_table(const ComplexityTable& table, const std::filesystem::path& path);
ComplexityTable import_table(const std::filesystem::path& path);

}  // namespace algstat
