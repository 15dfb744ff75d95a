#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "algstat/bitstring.hpp"
#include "algstat/numeric.hpp"

namespace algstat {

// Canonical Shannon-Fano code over a finite domain.
//
// Element i with positive mass P gets a codeword of length ceil(-log2 P).
// Codewords are assigned canonically: sorted by (length, domain index) and
// packed left to right the way DEFLATE assigns Huffman codes, so the code is
// prefix-free whenever the lengths satisfy Kraft (which they do, since
// sum 2^-ceil(-log P) <= sum P <= 1). Zero-mass elements get no codeword.
class Codebook {
 public:
  struct Word {
    BitString bits;
    std::size_t element;
  };

  enum class DecodeStatus { kOk, kMismatch, kIncomplete };
  struct DecodeResult {
    DecodeStatus status;
    std::size_t element = 0;
    std::size_t consumed = 0;
  };

  Codebook() = default;
  static Codebook build(std::span<const Rational> masses);

  // Words in canonical (length, element) order.
  const std::vector<Word>& words() const { return words_; }
  std::size_t domain_size() const { return by_element_.size(); }
  bool has_codeword(std::size_t element) const { return by_element_.at(element) >= 0; }
  const BitString& codeword(std::size_t element) const;

  // Reads the unique codeword prefixing stream[offset..]. kIncomplete when
  // the stream ends inside a codeword path, kMismatch when no codeword fits.
  DecodeResult decode(const BitString& stream, std::size_t offset) const;

  // Sum of 2^-len over all codewords, exact.
  Rational kraft() const;

 private:
  struct Node {
    int child[2] = {-1, -1};
    long element = -1;
  };

  std::vector<Word> words_;
  std::vector<long> by_element_;  // index into words_, or -1
  std::vector<Node> trie_;
};

}  // namespace algstat
