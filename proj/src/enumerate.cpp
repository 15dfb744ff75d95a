#include "algstat/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace algstat {

namespace {

constexpr unsigned kHaltLen = 3;
constexpr unsigned kSplitDepth = 3;

struct Node {
  BitString program;
  MachineState state;
};

// One level of the decode tree: reports the HALT completion of `node` to
// `on_halt` and each viable non-halting child to `on_child`.
class Expander {
 public:
  Expander(unsigned max_len, const Condition& cond, const Budgets& budgets)
      : max_len_(max_len), cond_(cond), budgets_(budgets), model_(cond.as_model()) {
    for (Opcode op : {Opcode::kEmit0, Opcode::kEmit1}) ops_.push_back({DecodedOp{op, 0, 2}, opcode_bits(op)});
    if (cond.copy_source() != nullptr) {
      for (unsigned n : {1U, 2U, 4U, 8U}) {
        ops_.push_back({DecodedOp{Opcode::kCopyIn, n, 5}, opcode_bits(Opcode::kCopyIn, n)});
      }
    }
    for (Opcode op : {Opcode::kDouble, Opcode::kFlip}) ops_.push_back({DecodedOp{op, 0, 4}, opcode_bits(op)});
    sf_bits_ = opcode_bits(Opcode::kSfDecode);
    halt_bits_ = opcode_bits(Opcode::kHalt);
  }

  template <class OnHalt, class OnChild>
  void expand(const Node& node, OnHalt&& on_halt, OnChild&& on_child) const {
    const std::size_t len = node.program.size();
    if (len + kHaltLen > max_len_) return;

    {
      MachineState s = node.state;
      if (execute(s, DecodedOp{Opcode::kHalt, 0, 3}, cond_, budgets_) == StepStatus::kOk) {
        on_halt(node.program + halt_bits_, s);
      }
    }
    for (const auto& [op, code] : ops_) {
      if (len + op.length + kHaltLen > max_len_) continue;
      Node child{node.program + code, node.state};
      if (execute(child.state, op, cond_, budgets_) == StepStatus::kOk) on_child(std::move(child));
    }
    if (model_ != nullptr) {
      for (const auto& word : model_->codebook().words()) {
        if (len + sf_bits_.size() + word.bits.size() + kHaltLen > max_len_) break;  // words sorted by length
        Node child{node.program + sf_bits_ + word.bits, node.state};
        if (execute_sfdecode(child.state, *model_, word.element, word.bits.size(), budgets_) == StepStatus::kOk) {
          on_child(std::move(child));
        }
      }
    }
  }

  template <class OnHalt>
  void walk(const Node& node, OnHalt& on_halt) const {
    expand(node, on_halt, [&](Node&& child) { walk(child, on_halt); });
  }

 private:
  unsigned max_len_;
  const Condition& cond_;
  const Budgets& budgets_;
  const ModelCondition* model_;
  std::vector<std::pair<DecodedOp, BitString>> ops_;
  BitString sf_bits_;
  BitString halt_bits_;
};

// Root node plus the nodes at kSplitDepth; halts above the split are sent
// to on_halt directly.
template <class OnHalt>
std::vector<Node> split_frontier(const Expander& ex, OnHalt& on_halt) {
  std::vector<Node> frontier{Node{}};
  for (unsigned depth = 0; depth < kSplitDepth && !frontier.empty(); ++depth) {
    std::vector<Node> next;
    for (const Node& n : frontier) ex.expand(n, on_halt, [&](Node&& child) { next.push_back(std::move(child)); });
    frontier = std::move(next);
  }
  return frontier;
}

struct Accumulator {
  unsigned k = 0;
  BitString witness;
  std::uint64_t m_units = 0;  // in units of 2^-max_len
  std::vector<std::pair<unsigned, std::uint64_t>> histogram;
};

using AccMap = std::unordered_map<BitString, Accumulator, BitStringHash>;

void add_histogram(std::vector<std::pair<unsigned, std::uint64_t>>& h, unsigned len, std::uint64_t count) {
  auto it = std::lower_bound(h.begin(), h.end(), len, [](const auto& e, unsigned l) { return e.first < l; });
  if (it != h.end() && it->first == len) {
    it->second += count;
  } else {
    h.insert(it, {len, count});
  }
}

void merge_into(Accumulator& into, Accumulator&& from) {
  if (from.k < into.k || (from.k == into.k && from.witness < into.witness)) {
    into.k = from.k;
    into.witness = std::move(from.witness);
  }
  into.m_units += from.m_units;
  for (const auto& [len, count] : from.histogram) add_histogram(into.histogram, len, count);
}

class TableSink {
 public:
  TableSink(unsigned max_len, std::size_t max_entries) : max_len_(max_len), max_entries_(max_entries) {}

  void operator()(const BitString& program, const MachineState& state) {
    const auto len = static_cast<unsigned>(program.size());
    auto [it, inserted] = map_.try_emplace(state.buffer);
    Accumulator& acc = it->second;
    if (inserted) {
      if (map_.size() > max_entries_) throw CapExceeded("table entry cap exceeded");
      acc.k = len;
      acc.witness = program;
    } else if (len < acc.k || (len == acc.k && program < acc.witness)) {
      acc.k = len;
      acc.witness = program;
    }
    acc.m_units += std::uint64_t{1} << (max_len_ - len);
    add_histogram(acc.histogram, len, 1);
  }

  void merge(TableSink&& other) {
    for (auto& [out, acc] : other.map_) {
      auto [it, inserted] = map_.try_emplace(out);
      if (inserted) {
        it->second = std::move(acc);
      } else {
        merge_into(it->second, std::move(acc));
      }
    }
    if (map_.size() > max_entries_) throw CapExceeded("table entry cap exceeded");
  }

  AccMap& map() { return map_; }

 private:
  unsigned max_len_;
  std::size_t max_entries_;
  AccMap map_;
};

void check_len(unsigned max_len) {
  if (max_len < 3) throw std::invalid_argument("max_len must be >= 3");
  if (max_len > 62) throw std::invalid_argument("max_len must be <= 62");
}

}  // namespace

std::vector<HaltingProgram> enumerate_halting(unsigned max_len, const Condition& cond, const Budgets& budgets) {
  check_len(max_len);
  budgets.validate();
  std::vector<HaltingProgram> out;
  Expander ex(max_len, cond, budgets);
  auto on_halt = [&](const BitString& program, const MachineState& s) {
    out.push_back({program, s.buffer, s.steps});
  };
  ex.walk(Node{}, on_halt);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.program < b.program; });
  return out;
}

ComplexityTable::ComplexityTable(unsigned max_len, Budgets budgets, std::string cond_fingerprint,
                                 std::vector<TableEntry> entries)
    : max_len_(max_len), budgets_(budgets), fingerprint_(std::move(cond_fingerprint)), entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) index_.emplace(entries_[i].output, i);
}

const TableEntry* ComplexityTable::find(const BitString& x) const {
  auto it = index_.find(x);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::optional<unsigned> ComplexityTable::k_of(const BitString& x) const {
  const TableEntry* e = find(x);
  if (e == nullptr) return std::nullopt;
  return e->k;
}

std::uint64_t ComplexityTable::program_count() const {
  std::uint64_t n = 0;
  for (const auto& e : entries_) {
    for (const auto& [len, count] : e.histogram) n += count;
  }
  return n;
}

ComplexityTable build_table(const BuildOptions& options, const Condition& cond) {
  check_len(options.max_len);
  options.budgets.validate();
  const Expander ex(options.max_len, cond, options.budgets);

  TableSink top(options.max_len, options.max_entries);
  const std::vector<Node> frontier = split_frontier(ex, top);

  const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, std::max<std::size_t>(1, frontier.size())));
  std::vector<TableSink> sinks;
  for (unsigned w = 0; w < workers; ++w) sinks.emplace_back(options.max_len, options.max_entries);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < frontier.size(); i = next++) ex.walk(frontier[i], sinks[w]);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = frontier.size();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& s : sinks) top.merge(std::move(s));

  std::vector<TableEntry> entries;
  entries.reserve(top.map().size());
  for (auto& [out, acc] : top.map()) {
    entries.push_back({out, acc.k, std::move(acc.witness), Dyadic(acc.m_units, options.max_len),
                       std::move(acc.histogram)});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.output < b.output; });
  return ComplexityTable(options.max_len, options.budgets, cond.fingerprint(), std::move(entries));
}

Dyadic kraft_sum(const ComplexityTable& table) {
  Dyadic total;
  for (const auto& e : table.entries()) total += e.m;
  return total;
}

// Table file:
//   algstat-table 1
//   machine tpm1-v1
//   max_len L / max_steps T / max_output O / condition <fingerprint>
//   entries N
//   <output> <K> <witness> <num>/2^<exp> <len>:<count>[,<len>:<count>...]   (N lines)
//   end
void write_table(const ComplexityTable& table, std::ostream& out) {
  out << "algstat-table 1\n";
  out << "machine " << kMachineVersion << "\n";
  out << "max_len " << table.max_len() << "\n";
  out << "max_steps " << table.budgets().max_steps << "\n";
  out << "max_output " << table.budgets().max_output << "\n";
  out << "condition " << table.condition_fingerprint() << "\n";
  out << "entries " << table.entries().size() << "\n";
  for (const auto& e : table.entries()) {
    out << e.output.token() << ' ' << e.k << ' ' << e.witness.token() << ' ' << e.m.str() << ' ';
    for (std::size_t i = 0; i < e.histogram.size(); ++i) {
      if (i > 0) out << ',';
      out << e.histogram[i].first << ':' << e.histogram[i].second;
    }
    out << '\n';
  }
  out << "end\n";
}

namespace {

std::string expect_line(std::istream& in, std::string_view key) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("table truncated before '" + std::string(key) + "'");
  if (!line.starts_with(std::string(key) + " ")) throw FormatError("expected '" + std::string(key) + "', got: " + line);
  return line.substr(key.size() + 1);
}

std::uint64_t to_u64(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw FormatError("bad number: " + text);
  }
  if (used != text.size() || text.empty() || text[0] == '-') throw FormatError("bad number: " + text);
  return v;
}

BitString to_bits(const std::string& token) {
  try {
    return BitString::parse(token);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

ComplexityTable read_table(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "algstat-table 1") throw FormatError("not an algstat table file");
  const std::string machine = expect_line(in, "machine");
  if (machine != kMachineVersion) {
    throw VersionError("table machine version '" + machine + "' != '" + std::string(kMachineVersion) + "'");
  }
  const auto max_len = to_u64(expect_line(in, "max_len"));
  Budgets budgets;
  budgets.max_steps = to_u64(expect_line(in, "max_steps"));
  budgets.max_output = to_u64(expect_line(in, "max_output"));
  if (max_len < 3 || max_len > 62 || budgets.max_steps < 1) throw FormatError("table caps out of range");
  const std::string fingerprint = expect_line(in, "condition");
  const auto count = to_u64(expect_line(in, "entries"));

  std::vector<TableEntry> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw FormatError("table truncated: " + std::to_string(i) + " of " + std::to_string(count) + " entries");
    std::istringstream row(line);
    std::string out, k, witness, m, hist, extra;
    if (!(row >> out >> k >> witness >> m >> hist) || (row >> extra)) throw FormatError("bad table row: " + line);
    TableEntry e{to_bits(out), static_cast<unsigned>(to_u64(k)), to_bits(witness), Dyadic::parse(m), {}};
    Dyadic from_hist;
    std::istringstream hs(hist);
    std::string item;
    while (std::getline(hs, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos) throw FormatError("bad histogram: " + hist);
      const auto len = static_cast<unsigned>(to_u64(item.substr(0, colon)));
      const auto c = to_u64(item.substr(colon + 1));
      if (len > max_len || c == 0 || (!e.histogram.empty() && e.histogram.back().first >= len)) {
        throw FormatError("bad histogram: " + hist);
      }
      e.histogram.emplace_back(len, c);
      from_hist += Dyadic(c << (max_len - len), static_cast<unsigned>(max_len));
    }
    if (e.histogram.empty() || e.histogram.front().first != e.k || e.witness.size() != e.k || e.k > max_len ||
        from_hist != e.m) {
      throw FormatError("inconsistent table row: " + line);
    }
    if (!entries.empty() && !(entries.back().output < e.output)) throw FormatError("table rows out of order");
    entries.push_back(std::move(e));
  }
  if (!std::getline(in, line) || line != "end") throw FormatError("table truncated: missing end marker");

  Budgets b = budgets;
  ComplexityTable table(static_cast<unsigned>(max_len), b, fingerprint, std::move(entries));
  if (kraft_sum(table) > Dyadic(1, 0)) throw FormatError("table violates the Kraft bound");
  return table;
}

void export_table(const ComplexityTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_table(table, out);
  if (!out) throw Error("write failed: " + path.string());
}

ComplexityTable import_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return read_table(in);
}

}  // namespace algstat
