#include "algstat/skstats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace algstat {

namespace {

BitString binary_word(std::uint64_t v, unsigned width) {
  BitString out;
  for (unsigned i = width; i-- > 0;) out.push_back(((v >> i) & 1) != 0);
  return out;
}

std::size_t common_prefix(const BitString& a, const BitString& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

BitString SkIndex::n_word() const { return binary_word(n_k, width); }

BitString SkIndex::padded_index(std::uint64_t i) const { return binary_word(i, width); }

std::optional<std::uint64_t> SkIndex::index_of(const BitString& x) const {
  auto it = positions.find(x);
  if (it == positions.end()) return std::nullopt;
  return it->second;
}

SkIndex sk(const ComplexityTable& table, unsigned k) {
  if (k > table.max_len()) {
    throw std::invalid_argument("sk: k=" + std::to_string(k) + " exceeds the table cap " +
                                std::to_string(table.max_len()));
  }
  SkIndex s;
  s.k = k;
  s.t.assign(k + 1, 0);
  for (const auto& e : table.entries()) {
    if (e.k > k) continue;
    s.positions.emplace(e.output, s.members.size());
    s.members.push_back(e.output);
    s.member_k.push_back(e.k);
    ++s.t[e.k];
  }
  s.n_k = s.members.size();
  s.width = static_cast<unsigned>(std::bit_width(s.n_k));
  return s;
}

MxRecord mx(const SkIndex& s, const BitString& x) {
  auto idx = s.index_of(x);
  if (!idx) throw std::invalid_argument("mx: '" + x.token() + "' is not in S^" + std::to_string(s.k));
  MxRecord r;
  r.x = x;
  r.k = s.k;
  r.index = s.padded_index(*idx);
  r.n_word = s.n_word();
  std::size_t m = common_prefix(r.index, r.n_word);
  if (m == r.index.size()) {
    r.degenerate = true;
    m = r.index.empty() ? 0 : r.index.size() - 1;
  }
  r.m_x = r.index.substr(0, m);
  if (!r.degenerate) {
    r.i_x = r.index.substr(m + 1);
    r.n_x = r.n_word.substr(m + 1);
  }
  return r;
}

std::vector<BitString> sk_mx(const SkIndex& s, const BitString& x) {
  const MxRecord r = mx(s, x);
  BitString prefix = r.m_x;
  prefix.push_back(false);
  std::vector<BitString> out;
  for (std::uint64_t i = 0; i < s.n_k; ++i) {
    if (s.padded_index(i).starts_with(prefix)) out.push_back(s.members[i]);
  }
  return out;
}

std::vector<XrMember> xr_members(const ComplexityTable& table) {
  // Position of each entry within S^K(x): entries with K <= K(x) that come
  // before it in canonical order.
  const unsigned top = table.max_len();
  std::vector<std::uint64_t> n_k(top + 1, 0);
  for (const auto& e : table.entries()) ++n_k[e.k];
  for (unsigned k = 1; k <= top; ++k) n_k[k] += n_k[k - 1];

  std::vector<std::uint64_t> seen(top + 1, 0);  // entries so far with K <= k
  std::vector<XrMember> out;
  out.reserve(table.entries().size());
  for (const auto& e : table.entries()) {
    const std::uint64_t index = seen[e.k];
    const unsigned width = static_cast<unsigned>(std::bit_width(n_k[e.k]));
    const std::size_t m = common_prefix(binary_word(index, width), binary_word(n_k[e.k], width));
    out.push_back({e.output, e.k, m});
    for (unsigned k = e.k; k <= top; ++k) ++seen[k];
  }
  return out;
}

XrResult xr(const ComplexityTable& table, unsigned r) {
  XrResult res;
  res.r = r;
  const unsigned top = table.max_len();
  std::vector<std::uint64_t> n_k(top + 1, 0);
  for (const auto& e : table.entries()) ++n_k[e.k];
  for (unsigned k = 1; k <= top; ++k) n_k[k] += n_k[k - 1];

  std::vector<std::uint64_t> slice(top + 1, 0);
  for (const auto& m : xr_members(table)) {
    if (m.m_len < r) continue;
    res.members.push_back(m.x);
    ++slice[m.k];
  }
  for (unsigned k = 0; k <= top; ++k) {
    const std::uint64_t t_k = n_k[k] - (k > 0 ? n_k[k - 1] : 0);
    if (t_k == 0) continue;
    XrSlice s;
    s.k = k;
    s.count = slice[k];
    s.n_k = n_k[k];
    // count <= 2^(1-r) N_k  <=>  count * 2^r <= 2 N_k
    s.ok = BigInt(s.count) << r <= BigInt(s.n_k) * 2;
    res.slices_ok = res.slices_ok && s.ok;
    res.slices.push_back(s);
  }
  return res;
}

std::vector<XrBoundRow> xr_bound_check(const ComplexityTable& table) {
  const auto members = xr_members(table);
  std::size_t max_m = 0;
  for (const auto& m : members) max_m = std::max(max_m, m.m_len);
  std::vector<XrBoundRow> rows;
  for (unsigned r = 0; r <= max_m + 1; ++r) {
    XrBoundRow row;
    row.r = r;
    for (const auto& m : members) {
      if (m.m_len < r) continue;
      ++row.size;
      row.sum += Dyadic::pow2(-static_cast<int>(m.k));
    }
    row.bound = Dyadic::pow2(2 - static_cast<int>(r));
    row.ratio = row.sum.to_double() / row.bound.to_double();
    row.pass = row.sum <= row.bound;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SkGapRow> sk_gap_report(const ComplexityTable& table) {
  std::vector<SkGapRow> rows;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> t(table.max_len() + 1, 0);
  for (const auto& e : table.entries()) ++t[e.k];
  for (unsigned k = 0; k <= table.max_len(); ++k) {
    n += t[k];
    if (n == 0) continue;
    SkGapRow row;
    row.k = k;
    row.n_k = n;
    row.log_n = std::log2(static_cast<double>(n));
    row.k_of_k = table.k_of(BitString::from_nat(k));
    if (row.k_of_k) row.gap = row.log_n - (static_cast<double>(k) - static_cast<double>(*row.k_of_k));
    rows.push_back(row);
  }
  return rows;
}

void write_sk_csv(const SkIndex& s, std::ostream& out) {
  out << "member,K,index\n";
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    out << s.members[i].token() << ',' << s.member_k[i] << ',' << s.padded_index(i).token() << '\n';
  }
}

void write_xr_csv(const std::vector<XrBoundRow>& rows, std::ostream& out) {
  out << "r,size,sum,bound,pass\n";
  for (const auto& row : rows) {
    out << row.r << ',' << row.size << ',' << row.sum.str() << ',' << row.bound.str() << ','
        << (row.pass ? "PASS" : "FAIL") << '\n';
  }
}

}  // namespace algstat
