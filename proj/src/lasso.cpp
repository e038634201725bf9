#include "qcf/lasso.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>

#include "qcf/error.hpp"
#include "qcf/syntax.hpp"

namespace qcf {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  if (names_.size() > kMaxAlphabet)
    throw Error("alphabet has " + std::to_string(names_.size()) + " atoms; at most 64 supported");
  for (const auto& n : names_)
    if (!is_valid_atom_name(n)) throw Error("invalid atom name '" + n + "'");
}

std::optional<std::size_t> Alphabet::index(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

Letter Alphabet::mask(const std::vector<std::string>& atoms) const {
  Letter m = 0;
  for (const auto& a : atoms) {
    auto i = index(a);
    if (!i) throw Error("atom '" + a + "' is not in the alphabet");
    m |= Letter{1} << *i;
  }
  return m;
}

Letter Alphabet::full_mask() const {
  return names_.size() == 64 ? ~Letter{0} : (Letter{1} << names_.size()) - 1;
}

bool Alphabet::contains_all(const Alphabet& other) const {
  return std::includes(names_.begin(), names_.end(), other.names_.begin(), other.names_.end());
}

// ---------------------------------------------------------------------------

LassoTrace::LassoTrace(Alphabet alphabet, std::vector<Letter> prefix, std::vector<Letter> loop)
    : alphabet_(std::move(alphabet)), prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (loop_.empty()) throw Error("lasso loop must be nonempty");
  const Letter full = alphabet_.full_mask();
  for (Letter a : prefix_)
    if (a & ~full) throw Error("lasso letter outside the alphabet");
  for (Letter a : loop_)
    if (a & ~full) throw Error("lasso letter outside the alphabet");
}

Letter LassoTrace::at(std::size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return loop_[(n - prefix_.size()) % loop_.size()];
}

LassoTrace LassoTrace::canonical() const {
  std::vector<Letter> loop = loop_;
  const std::size_t l = loop.size();
  for (std::size_t d = 1; d < l; ++d) {
    if (l % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < l && periodic; ++i) periodic = loop[i] == loop[i - d];
    if (periodic) {
      loop.resize(d);
      break;
    }
  }
  std::vector<Letter> prefix = prefix_;
  while (!prefix.empty() && prefix.back() == loop.back()) {
    std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
    prefix.pop_back();
  }
  return LassoTrace(alphabet_, std::move(prefix), std::move(loop));
}

bool LassoTrace::is_canonical() const { return canonical() == *this; }

LassoTrace LassoTrace::reshaped(std::size_t p, std::size_t l) const {
  if (p < prefix_.size() || l % loop_.size() != 0)
    throw Error("cannot reshape lasso to a smaller prefix or non-multiple loop");
  std::vector<Letter> prefix(p), loop(l);
  for (std::size_t i = 0; i < p; ++i) prefix[i] = at(i);
  for (std::size_t i = 0; i < l; ++i) loop[i] = at(p + i);
  return LassoTrace(alphabet_, std::move(prefix), std::move(loop));
}

LassoTrace LassoTrace::with_alphabet(const Alphabet& bigger) const {
  if (!bigger.contains_all(alphabet_)) throw Error("target alphabet misses atoms of the trace");
  std::vector<std::size_t> map(alphabet_.size());
  for (std::size_t i = 0; i < alphabet_.size(); ++i) map[i] = *bigger.index(alphabet_.name(i));
  auto remap = [&](Letter a) {
    Letter b = 0;
    for (std::size_t i = 0; i < map.size(); ++i)
      if ((a >> i) & 1U) b |= Letter{1} << map[i];
    return b;
  };
  std::vector<Letter> prefix, loop;
  for (Letter a : prefix_) prefix.push_back(remap(a));
  for (Letter a : loop_) loop.push_back(remap(a));
  return LassoTrace(bigger, std::move(prefix), std::move(loop));
}

bool LassoTrace::same_word(const LassoTrace& other) const {
  return alphabet_ == other.alphabet_ && canonical() == other.canonical();
}

// ---------------------------------------------------------------------------

namespace {

struct LetterText {
  std::vector<std::vector<std::string>> prefix, loop;
};

LetterText scan_letters(std::string_view s) {
  LetterText out;
  bool seen_bar = false;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  for (skip_ws(); i < s.size(); skip_ws()) {
    if (s[i] == '|') {
      if (seen_bar) throw SyntaxError("second '|' in lasso", 1, i + 1);
      seen_bar = true;
      ++i;
      continue;
    }
    if (s[i] != '{') throw SyntaxError("expected '{' in lasso", 1, i + 1);
    ++i;
    std::vector<std::string> letter;
    for (;;) {
      skip_ws();
      if (i >= s.size()) throw SyntaxError("unterminated letter in lasso", 1, i + 1);
      if (s[i] == '}') {
        ++i;
        break;
      }
      if (!letter.empty()) {
        if (s[i] != ',') throw SyntaxError("expected ',' or '}' in lasso", 1, i + 1);
        ++i;
        skip_ws();
      }
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      if (j == i) throw SyntaxError("expected atom name in lasso", 1, i + 1);
      letter.emplace_back(s.substr(i, j - i));
      i = j;
    }
    (seen_bar ? out.loop : out.prefix).push_back(std::move(letter));
  }
  if (!seen_bar) std::swap(out.prefix, out.loop);
  if (out.loop.empty()) throw SyntaxError("lasso loop must be nonempty", 1, s.size() + 1);
  return out;
}

}  // namespace

LassoTrace parse_lasso(std::string_view text, const std::optional<Alphabet>& alphabet) {
  LetterText lt = scan_letters(text);
  Alphabet ab;
  if (alphabet) {
    ab = *alphabet;
  } else {
    std::vector<std::string> names;
    for (const auto* part : {&lt.prefix, &lt.loop})
      for (const auto& letter : *part) names.insert(names.end(), letter.begin(), letter.end());
    ab = Alphabet(std::move(names));
  }
  std::vector<Letter> prefix, loop;
  for (const auto& letter : lt.prefix) prefix.push_back(ab.mask(letter));
  for (const auto& letter : lt.loop) loop.push_back(ab.mask(letter));
  return LassoTrace(std::move(ab), std::move(prefix), std::move(loop));
}

std::string render_letter(const Alphabet& alphabet, Letter letter) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!((letter >> i) & 1U)) continue;
    if (!first) out += ',';
    out += alphabet.name(i);
    first = false;
  }
  return out + "}";
}

std::string render_lasso(const LassoTrace& t) {
  std::string out;
  for (Letter a : t.prefix()) out += render_letter(t.alphabet(), a);
  out += '|';
  for (Letter a : t.loop()) out += render_letter(t.alphabet(), a);
  return out;
}

Alignment align_lassos(const std::vector<LassoTrace>& ts) {
  Alignment al;
  if (ts.empty()) return al;
  for (const auto& t : ts) {
    if (t.alphabet() != ts.front().alphabet()) throw Error("lassos over different alphabets");
    al.prefix = std::max(al.prefix, t.prefix_length());
    al.loop = std::lcm(al.loop, t.loop_length());
  }
  for (const auto& t : ts) al.traces.push_back(t.reshaped(al.prefix, al.loop));
  return al;
}

boost::dynamic_bitset<> difference_pattern(const LassoTrace& reference, const LassoTrace& t,
                                           Letter x_mask, std::size_t p, std::size_t l) {
  const std::size_t width = static_cast<std::size_t>(std::popcount(x_mask));
  boost::dynamic_bitset<> out((p + l) * width);
  for (std::size_t n = 0; n < p + l; ++n) {
    const Letter d = (reference.at(n) ^ t.at(n)) & x_mask;
    std::size_t k = 0;
    for (std::size_t bit = 0; bit < 64 && k < width; ++bit) {
      if (!((x_mask >> bit) & 1U)) continue;
      if ((d >> bit) & 1U) out.set(n * width + k);
      ++k;
    }
  }
  return out;
}

bool subset_similarity(const LassoTrace& reference, const LassoTrace& t1, const LassoTrace& t2,
                       const std::vector<std::string>& x) {
  if (t1.alphabet() != reference.alphabet() || t2.alphabet() != reference.alphabet())
    throw Error("subset_similarity: alphabet mismatch");
  const Letter mask = reference.alphabet().mask(x);
  std::size_t p = std::max({reference.prefix_length(), t1.prefix_length(), t2.prefix_length()});
  std::size_t l = std::lcm(reference.loop_length(), std::lcm(t1.loop_length(), t2.loop_length()));
  return difference_pattern(reference, t1, mask, p, l)
      .is_subset_of(difference_pattern(reference, t2, mask, p, l));
}

}  // namespace qcf
