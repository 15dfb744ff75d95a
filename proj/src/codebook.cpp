#include "algstat/codebook.hpp"

#include <algorithm>
#include <numeric>

namespace algstat {

Codebook Codebook::build(std::span<const Rational> masses) {
  Codebook book;
  book.by_element_.assign(masses.size(), -1);

  std::vector<std::pair<int, std::size_t>> order;  // (length, element)
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (masses[i] < 0) throw FormatError("negative mass in codebook");
    if (masses[i] == 0) continue;
    order.emplace_back(ceil_neglog2(masses[i]), i);
  }
  std::sort(order.begin(), order.end());

  BigInt code = 0;
  int prev_len = order.empty() ? 0 : order.front().first;
  for (const auto& [len, element] : order) {
    code <<= (len - prev_len);
    prev_len = len;
    if (code >> len != 0) throw FormatError("codebook lengths violate Kraft");
    BitString word;
    for (int b = len - 1; b >= 0; --b) word.push_back(bit_test(code, static_cast<unsigned>(b)));
    book.by_element_[element] = static_cast<long>(book.words_.size());
    book.words_.push_back({std::move(word), element});
    ++code;
  }

  book.trie_.emplace_back();
  for (std::size_t w = 0; w < book.words_.size(); ++w) {
    int node = 0;
    const BitString& word = book.words_[w].bits;
    for (std::size_t i = 0; i < word.size(); ++i) {
      const int b = word[i] ? 1 : 0;
      if (book.trie_[node].child[b] < 0) {
        book.trie_[node].child[b] = static_cast<int>(book.trie_.size());
        book.trie_.emplace_back();
      }
      node = book.trie_[node].child[b];
    }
    book.trie_[node].element = static_cast<long>(book.words_[w].element);
  }
  return book;
}

const BitString& Codebook::codeword(std::size_t element) const {
  const long w = by_element_.at(element);
  if (w < 0) throw std::out_of_range("element has no codeword (zero mass)");
  return words_[static_cast<std::size_t>(w)].bits;
}

Codebook::DecodeResult Codebook::decode(const BitString& stream, std::size_t offset) const {
  if (trie_.empty()) return {DecodeStatus::kMismatch};
  int node = 0;
  std::size_t pos = offset;
  while (true) {
    if (trie_[node].element >= 0) {
      return {DecodeStatus::kOk, static_cast<std::size_t>(trie_[node].element), pos - offset};
    }
    if (trie_[node].child[0] < 0 && trie_[node].child[1] < 0) return {DecodeStatus::kMismatch};
    if (pos >= stream.size()) return {DecodeStatus::kIncomplete};
    const int next = trie_[node].child[stream[pos] ? 1 : 0];
    if (next < 0) return {DecodeStatus::kMismatch};
    node = next;
    ++pos;
  }
}

Rational Codebook::kraft() const {
  Rational sum = 0;
  for (const auto& w : words_) sum += Rational(BigInt(1), BigInt(1) << w.bits.size());
  return sum;
}

}  // namespace algstat
