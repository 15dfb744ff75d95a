#include "algstat/setlang.hpp"

#include <algorithm>
#include <charconv>

#include "algstat/codec.hpp"

namespace algstat {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::size_t nat_len(std::uint64_t n) { return nat_code_length(n); }
std::size_t std_len(const BitString& x) { return self_delimit_length(x.size()); }

bool is_base(const SetDescription& d) { return !std::holds_alternative<UnionSet>(d.node); }

void flatten(const SetDescription& d, std::vector<const SetDescription*>& out) {
  if (const auto* u = std::get_if<UnionSet>(&d.node)) {
    for (const auto& p : u->parts) flatten(p, out);
  } else {
    out.push_back(&d);
  }
}

// |intersection of the given base sets|
BigInt count_intersection(const std::vector<const SetDescription*>& parts) {
  for (const auto* p : parts) {
    const std::vector<BitString>* explicit_elems = nullptr;
    std::vector<BitString> single;
    if (const auto* s = std::get_if<SingletonSet>(&p->node)) {
      single.push_back(s->x);
      explicit_elems = &single;
    } else if (const auto* l = std::get_if<ListSet>(&p->node)) {
      explicit_elems = &l->elements;
    }
    if (explicit_elems == nullptr) continue;
    BigInt count = 0;
    for (const auto& e : *explicit_elems) {
      if (std::all_of(parts.begin(), parts.end(), [&](const auto* q) { return member(*q, e); })) ++count;
    }
    return count;
  }

  // Only All / Cyl / Hamming remain.
  std::uint64_t n = 0;
  bool have_n = false;
  BitString prefix;
  bool have_s = false;
  std::uint64_t s = 0;
  for (const auto* p : parts) {
    std::uint64_t pn = 0;
    if (const auto* a = std::get_if<AllSet>(&p->node)) {
      pn = a->n;
    } else if (const auto* c = std::get_if<CylSet>(&p->node)) {
      pn = c->n;
      if (c->prefix.size() > prefix.size()) {
        if (!c->prefix.starts_with(prefix)) return 0;
        prefix = c->prefix;
      } else if (!prefix.starts_with(c->prefix)) {
        return 0;
      }
    } else if (const auto* h = std::get_if<HammingSet>(&p->node)) {
      pn = h->n;
      if (have_s && s != h->s) return 0;
      have_s = true;
      s = h->s;
    }
    if (have_n && pn != n) return 0;
    have_n = true;
    n = pn;
  }
  const std::uint64_t free_bits = n - prefix.size();
  if (!have_s) return BigInt(1) << free_bits;
  const std::uint64_t w = prefix.weight();
  if (s < w || s - w > free_bits) return 0;
  if (free_bits > UINT32_MAX) throw CapExceeded("set size computation too large");
  return binomial(static_cast<unsigned>(free_bits), static_cast<unsigned>(s - w));
}

void encode_into(const SetDescription& d, BitString& out) {
  std::visit(Overloaded{
                 [&](const SingletonSet& s) { out.append(bits("00") + self_delimit(s.x)); },
                 [&](const AllSet& a) { out.append(bits("01") + nat_encode(a.n)); },
                 [&](const CylSet& c) { out.append(bits("100") + self_delimit(c.prefix) + nat_encode(c.n)); },
                 [&](const HammingSet& h) { out.append(bits("101") + nat_encode(h.n) + nat_encode(h.s)); },
                 [&](const UnionSet& u) {
                   out.append(bits("110") + nat_encode(u.parts.size()));
                   for (const auto& p : u.parts) encode_into(p, out);
                 },
                 [&](const ListSet& l) {
                   out.append(bits("111") + nat_encode(l.elements.size()));
                   for (const auto& e : l.elements) out.append(self_delimit(e));
                 },
             },
             d.node);
}

SetDescription decode_from(BitReader& r) {
  SetDescription d;
  if (!r.read_bit()) {
    if (!r.read_bit()) {
      d.node = SingletonSet{r.read_self_delimited()};
    } else {
      d.node = AllSet{r.read_nat()};
    }
    return d;
  }
  const bool b1 = r.read_bit();
  const bool b2 = r.read_bit();
  if (!b1 && !b2) {
    BitString p = r.read_self_delimited();
    d.node = CylSet{std::move(p), r.read_nat()};
  } else if (!b1 && b2) {
    const std::uint64_t n = r.read_nat();
    d.node = HammingSet{n, r.read_nat()};
  } else if (b1 && !b2) {
    const std::uint64_t c = r.read_nat();
    if (c < 2) throw FormatError("union needs at least two parts");
    UnionSet u;
    for (std::uint64_t i = 0; i < c; ++i) u.parts.push_back(decode_from(r));
    d.node = std::move(u);
  } else {
    const std::uint64_t c = r.read_nat();
    if (c < 1) throw FormatError("list needs at least one element");
    if (c > r.remaining()) throw FormatError("code truncated");
    ListSet l;
    for (std::uint64_t i = 0; i < c; ++i) l.elements.push_back(r.read_self_delimited());
    d.node = std::move(l);
  }
  return d;
}

}  // namespace

void validate(const SetDescription& d) {
  std::visit(Overloaded{
                 [](const SingletonSet&) {},
                 [](const AllSet&) {},
                 [](const CylSet& c) {
                   if (c.prefix.size() > c.n) throw FormatError("cyl: prefix longer than n");
                 },
                 [](const HammingSet& h) {
                   if (h.s > h.n) throw FormatError("ham: s > n");
                 },
                 [](const UnionSet& u) {
                   if (u.parts.size() < 2) throw FormatError("union needs at least two parts");
                   for (const auto& p : u.parts) validate(p);
                 },
                 [](const ListSet& l) {
                   if (l.elements.empty()) throw FormatError("list needs at least one element");
                   for (std::size_t i = 1; i < l.elements.size(); ++i) {
                     if (!(l.elements[i - 1] < l.elements[i])) throw FormatError("list elements not in canonical order");
                   }
                 },
             },
             d.node);
}

BitString encode(const SetDescription& d) {
  validate(d);
  BitString out;
  encode_into(d, out);
  return out;
}

std::size_t code_length(const SetDescription& d) {
  return std::visit(Overloaded{
                        [](const SingletonSet& s) { return 2 + std_len(s.x); },
                        [](const AllSet& a) { return 2 + nat_len(a.n); },
                        [](const CylSet& c) { return 3 + std_len(c.prefix) + nat_len(c.n); },
                        [](const HammingSet& h) { return 3 + nat_len(h.n) + nat_len(h.s); },
                        [](const UnionSet& u) {
                          std::size_t len = 3 + nat_len(u.parts.size());
                          for (const auto& p : u.parts) len += code_length(p);
                          return len;
                        },
                        [](const ListSet& l) {
                          std::size_t len = 3 + nat_len(l.elements.size());
                          for (const auto& e : l.elements) len += std_len(e);
                          return len;
                        },
                    },
                    d.node);
}

SetDescription decode_set(const BitString& code) {
  BitReader r(code);
  SetDescription d = decode_from(r);
  if (!r.at_end()) throw FormatError("trailing bits after set description");
  validate(d);
  return d;
}

unsigned union_depth(const SetDescription& d) {
  if (const auto* u = std::get_if<UnionSet>(&d.node)) {
    unsigned depth = 0;
    for (const auto& p : u->parts) depth = std::max(depth, union_depth(p));
    return depth + 1;
  }
  return 0;
}

bool member(const SetDescription& d, const BitString& x) {
  return std::visit(Overloaded{
                        [&](const SingletonSet& s) { return s.x == x; },
                        [&](const AllSet& a) { return x.size() == a.n; },
                        [&](const CylSet& c) { return x.size() == c.n && x.starts_with(c.prefix); },
                        [&](const HammingSet& h) { return x.size() == h.n && x.weight() == h.s; },
                        [&](const UnionSet& u) {
                          return std::any_of(u.parts.begin(), u.parts.end(), [&](const auto& p) { return member(p, x); });
                        },
                        [&](const ListSet& l) { return std::binary_search(l.elements.begin(), l.elements.end(), x); },
                    },
                    d.node);
}

BigInt set_size(const SetDescription& d) {
  if (is_base(d)) return count_intersection({&d});
  std::vector<const SetDescription*> parts;
  flatten(d, parts);
  if (parts.size() > 16) throw CapExceeded("union too wide for exact size");
  BigInt total = 0;
  const std::uint32_t subsets = std::uint32_t{1} << parts.size();
  std::vector<const SetDescription*> chosen;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    chosen.clear();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) chosen.push_back(parts[i]);
    }
    const BigInt c = count_intersection(chosen);
    if (chosen.size() % 2 == 1) {
      total += c;
    } else {
      total -= c;
    }
  }
  return total;
}

int log_size(const SetDescription& d) { return ceil_log2(set_size(d)); }

std::vector<BitString> denote(const SetDescription& d, std::size_t cap) {
  if (set_size(d) > cap) throw CapExceeded("set larger than denotation cap " + std::to_string(cap));
  std::vector<BitString> out;
  std::visit(Overloaded{
                 [&](const SingletonSet& s) { out.push_back(s.x); },
                 [&](const AllSet& a) { out = strings_of_length(a.n); },
                 [&](const CylSet& c) {
                   for (const auto& tail : strings_of_length(c.n - c.prefix.size())) out.push_back(c.prefix + tail);
                 },
                 [&](const HammingSet& h) {
                   std::string s(h.n - h.s, '0');
                   s.append(h.s, '1');
                   do {
                     out.push_back(BitString::parse(s));
                   } while (std::next_permutation(s.begin(), s.end()));
                 },
                 [&](const UnionSet& u) {
                   for (const auto& p : u.parts) {
                     auto part = denote(p, cap);
                     out.insert(out.end(), part.begin(), part.end());
                   }
                 },
                 [&](const ListSet& l) { out = l.elements; },
             },
             d.node);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view text) : text_(text) {}

  SetDescription parse_all() {
    SetDescription d = parse();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    validate(d);
    return d;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw FormatError("set syntax: " + why + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  bool eat(std::string_view token) {
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!eat(token)) fail("expected '" + std::string(token) + "'");
  }

  BitString parse_bits() {
    if (eat("-")) return {};
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) ++pos_;
    return BitString::parse(text_.substr(start, pos_ - start));
  }

  std::uint64_t parse_nat() {
    std::uint64_t v = 0;
    const char* begin = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(begin, text_.data() + text_.size(), v);
    if (ec != std::errc{} || ptr == begin) fail("expected a natural number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return v;
  }

  SetDescription parse() {
    if (eat("singleton:")) return singleton_set(parse_bits());
    if (eat("all:")) return all_set(parse_nat());
    if (eat("cyl:")) {
      BitString p = parse_bits();
      expect("/");
      return cyl_set(std::move(p), parse_nat());
    }
    if (eat("ham:")) {
      const auto n = parse_nat();
      expect(",");
      return hamming_set(n, parse_nat());
    }
    if (eat("union(")) {
      std::vector<SetDescription> parts{parse()};
      while (eat(";")) parts.push_back(parse());
      expect(")");
      return union_set(std::move(parts));
    }
    if (eat("list{")) {
      std::vector<BitString> elems{parse_bits()};
      while (eat(",")) elems.push_back(parse_bits());
      expect("}");
      return list_set(std::move(elems));
    }
    fail("unknown set form");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetDescription parse_set(std::string_view text) { return SetParser(text).parse_all(); }

std::string format_set(const SetDescription& d) {
  return std::visit(Overloaded{
                        [](const SingletonSet& s) { return "singleton:" + s.x.token(); },
                        [](const AllSet& a) { return "all:" + std::to_string(a.n); },
                        [](const CylSet& c) { return "cyl:" + c.prefix.token() + "/" + std::to_string(c.n); },
                        [](const HammingSet& h) { return "ham:" + std::to_string(h.n) + "," + std::to_string(h.s); },
                        [](const UnionSet& u) {
                          std::string out = "union(";
                          for (std::size_t i = 0; i < u.parts.size(); ++i) {
                            if (i > 0) out += ';';
                            out += format_set(u.parts[i]);
                          }
                          return out + ")";
                        },
                        [](const ListSet& l) {
                          std::string out = "list{";
                          for (std::size_t i = 0; i < l.elements.size(); ++i) {
                            if (i > 0) out += ',';
                            out += l.elements[i].token();
                          }
                          return out + "}";
                        },
                    },
                    d.node);
}

}  // namespace algstat
