#pragma once

// SetLang: a prefix-free description language for finite sets of strings.
//
//   00  Singleton  x'                      {x}
//   01  All        bar(b(n))               {0,1}^n
//   100 Cyl        p' bar(b(n))            strings of length n with prefix p
//   101 Hamming    bar(b(n)) bar(b(s))     strings of length n with s ones
//   110 Union      bar(b(c)) part_1..c     c >= 2
//   111 List       bar(b(c)) e_1'..e_c'    c >= 1, strictly canonical order
//
// where x' is the self-delimiting code of x. A description's complexity is
// the length of its code.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "algstat/bitstring.hpp"
#include "algstat/numeric.hpp"

namespace algstat {

struct SetDescription;

struct SingletonSet {
  BitString x;
  friend bool operator==(const SingletonSet&, const SingletonSet&) = default;
};
struct AllSet {
  std::uint64_t n = 0;
  friend bool operator==(const AllSet&, const AllSet&) = default;
};
struct CylSet {
  BitString prefix;
  std::uint64_t n = 0;
  friend bool operator==(const CylSet&, const CylSet&) = default;
};
struct HammingSet {
  std::uint64_t n = 0;
  std::uint64_t s = 0;
  friend bool operator==(const HammingSet&, const HammingSet&) = default;
};
struct UnionSet {
  std::vector<SetDescription> parts;
  friend bool operator==(const UnionSet&, const UnionSet&);
};
struct ListSet {
  std::vector<BitString> elements;
  friend bool operator==(const ListSet&, const ListSet&) = default;
};

struct SetDescription {
  std::variant<SingletonSet, AllSet, CylSet, HammingSet, UnionSet, ListSet> node;

  friend bool operator==(const SetDescription&, const SetDescription&) = default;
};

inline bool operator==(const UnionSet& a, const UnionSet& b) { return a.parts == b.parts; }

inline SetDescription singleton_set(BitString x) { return {SingletonSet{std::move(x)}}; }
inline SetDescription all_set(std::uint64_t n) { return {AllSet{n}}; }
inline SetDescription cyl_set(BitString prefix, std::uint64_t n) { return {CylSet{std::move(prefix), n}}; }
inline SetDescription hamming_set(std::uint64_t n, std::uint64_t s) { return {HammingSet{n, s}}; }
inline SetDescription union_set(std::vector<SetDescription> parts) { return {UnionSet{std::move(parts)}}; }
inline SetDescription list_set(std::vector<BitString> elements) { return {ListSet{std::move(elements)}}; }

// Throws FormatError if the description violates a grammar constraint.
void validate(const SetDescription& d);

BitString encode(const SetDescription& d);
// Code length computed arithmetically; equals encode(d).size().
std::size_t code_length(const SetDescription& d);
// Exact inverse of encode; rejects trailing bits and invalid descriptions.
SetDescription decode_set(const BitString& code);

// Nesting depth of unions: 0 for base sets.
unsigned union_depth(const SetDescription& d);

bool member(const SetDescription& d, const BitString& x);
// Exact |S|.
BigInt set_size(const SetDescription& d);
// ceil(log2 |S|)
int log_size(const SetDescription& d);
// Elements in canonical order; throws CapExceeded if |S| > cap.
std::vector<BitString> denote(const SetDescription& d, std::size_t cap = std::size_t{1} << 20);

// Textual syntax: singleton:1011, all:8, cyl:10/4, ham:8,4,
// union(all:8;singleton:-), list{-,0,1}. "-" is the empty string;
// list elements must be in canonical order.
SetDescription parse_set(std::string_view text);
std::string format_set(const SetDescription& d);

}  // namespace algstat
