#pragma once

// The sets S^k = {x : K(x) <= k} and their enumeration indices.
//
// Members of S^k are listed in canonical table order. Each member gets an
// index 0..N_k-1 written in binary, padded to the bit length of N_k, and
// m_x is the longest common prefix of x's index and N_k itself. Because
// every index is below N_k, the two words first differ where the index has
// a 0 and N_k has a 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <unordered_map>
#include <vector>

#include "algstat/enumerate.hpp"

namespace algstat {

struct SkIndex {
  unsigned k = 0;
  std::vector<BitString> members;     // canonical order
  std::vector<unsigned> member_k;     // K of each member
  std::uint64_t n_k = 0;              // |S^k|
  unsigned width = 0;                 // bit length of n_k
  std::vector<std::uint64_t> t;       // t[i] = |S^i \ S^(i-1)| for i = 0..k

  // N_k in binary at the padded width.
  BitString n_word() const;
  BitString padded_index(std::uint64_t i) const;
  std::optional<std::uint64_t> index_of(const BitString& x) const;

  std::unordered_map<BitString, std::uint64_t, BitStringHash> positions;
};

// Throws std::invalid_argument if k exceeds the table's length cap.
SkIndex sk(const ComplexityTable& table, unsigned k);

struct MxRecord {
  BitString x;
  unsigned k = 0;
  BitString index;   // I_x
  BitString n_word;  // N_k at the same width
  BitString m_x;     // longest common prefix
  BitString i_x;     // index = m_x 0 i_x
  BitString n_x;     // n_word = m_x 1 n_x
  // Set when the index agrees with n_word on every bit. Cannot happen while
  // indices stay below N_k; kept so a violated invariant is visible.
  bool degenerate = false;
};

// Throws std::invalid_argument when x is not in S^k.
MxRecord mx(const SkIndex& s, const BitString& x);
// {y in S^k : m_x 0 prefixes I_y}; exactly 2^(width - l(m_x) - 1) members.
std::vector<BitString> sk_mx(const SkIndex& s, const BitString& x);

// m_x evaluated in S^K(x) for every table entry.
struct XrMember {
  BitString x;
  unsigned k = 0;
  std::size_t m_len = 0;
};
std::vector<XrMember> xr_members(const ComplexityTable& table);

struct XrSlice {
  unsigned k = 0;
  std::uint64_t count = 0;  // |X(r) ∩ (S^k \ S^(k-1))|
  std::uint64_t n_k = 0;
  bool ok = false;          // count <= 2^(-r+1) N_k
};

struct XrResult {
  unsigned r = 0;
  std::vector<BitString> members;  // canonical order
  std::vector<XrSlice> slices;     // ascending k, only nonempty slices of S^k \ S^(k-1)
  bool slices_ok = true;
};

// X(r) = {x : l(m_x) >= r} restricted to the table's support.
XrResult xr(const ComplexityTable& table, unsigned r);

struct XrBoundRow {
  unsigned r = 0;
  std::size_t size = 0;
  Dyadic sum;     // sum of 2^-K(x) over X(r)
  Dyadic bound;   // 2^(-r+2)
  double ratio = 0;
  bool pass = false;
};

// One row for every r from 0 to one past the widest index.
std::vector<XrBoundRow> xr_bound_check(const ComplexityTable& table);

struct SkGapRow {
  unsigned k = 0;
  std::uint64_t n_k = 0;
  double log_n = 0;                 // log2 N_k
  std::optional<unsigned> k_of_k;   // K(b(k))
  std::optional<double> gap;        // log2 N_k - (k - K(b(k)))
};
std::vector<SkGapRow> sk_gap_report(const ComplexityTable& table);

// member,K,index
void write_sk_csv(const SkIndex& s, std::ostream& out);
// r,size,sum,bound,pass
void write_xr_csv(const std::vector<XrBoundRow>& rows, std::ostream& out);

}  // namespace algstat
