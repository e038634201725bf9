#include "qcf/context.hpp"

#include <algorithm>
#include <sstream>

#include "qcf/error.hpp"
#include "qcf/syntax.hpp"

namespace qcf {

EvaluationContext::EvaluationContext(std::vector<std::string> names, std::vector<LassoTrace> worlds,
                                     WorldSet universe, Preorder order, EvalBounds bounds)
    : names_(std::move(names)),
      worlds_(std::move(worlds)),
      universe_(std::move(universe)),
      order_(std::move(order)),
      bounds_(std::move(bounds)) {
  const std::size_t n = worlds_.size();
  if (names_.size() != n || universe_.size() != n || order_.size() != n)
    throw ModelError("context components disagree on the number of worlds");
  for (const auto& w : worlds_)
    if (w.alphabet() != worlds_.front().alphabet()) throw ModelError("worlds use different alphabets");
  if (!universe_[order_.reference()]) throw ModelError("reference world is not in the universe");
}

Extension EvaluationContext::extension(const Formula& f) const {
  const std::string key = render_formula(f);
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->entries.find(key); it != cache_->entries.end()) return it->second;
  }
  Extension ext{WorldSet(size()), false};
  for (std::size_t w = 0; w < size(); ++w) {
    Truth t = eval_qptl_bounded(worlds_[w], f, bounds_);
    ext.worlds[w] = t.value;
    ext.bounded = ext.bounded || t.bounded;
  }
  std::lock_guard lock(cache_->mutex);
  cache_->entries.emplace(key, ext);
  return ext;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

EvaluationContext load_finite_universe(std::string_view text) {
  std::vector<std::string> worlds;
  std::optional<std::vector<std::string>> universe;
  std::string ref;
  std::vector<std::pair<std::string, std::vector<std::string>>> props;
  std::vector<std::pair<std::string, std::string>> order;

  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) throw SyntaxError("expected 'section:'", line_no, 1);
    auto head = split_words(line.substr(0, colon));
    auto body = split_words(line.substr(colon + 1));
    if (head.empty()) throw SyntaxError("missing section name", line_no, 1);
    const std::string& section = head[0];
    if (section == "prop") {
      if (head.size() != 2) throw SyntaxError("expected 'prop <name>:'", line_no, 1);
      if (!is_valid_atom_name(head[1]))
        throw SyntaxError("invalid proposition name '" + head[1] + "'", line_no, 1);
      props.emplace_back(head[1], body);
      continue;
    }
    if (head.size() != 1) throw SyntaxError("unexpected text before ':'", line_no, 1);
    if (section == "worlds") {
      worlds.insert(worlds.end(), body.begin(), body.end());
    } else if (section == "universe") {
      if (!universe) universe.emplace();
      universe->insert(universe->end(), body.begin(), body.end());
    } else if (section == "ref") {
      if (body.size() != 1) throw SyntaxError("expected exactly one reference world", line_no, 1);
      ref = body[0];
    } else if (section == "order") {
      for (const auto& g : body) {
        auto le = g.find("<=");
        if (le == std::string::npos || le == 0 || le + 2 == g.size())
          throw SyntaxError("expected 'w1<=w2', found '" + g + "'", line_no, 1);
        order.emplace_back(g.substr(0, le), g.substr(le + 2));
      }
    } else {
      throw SyntaxError("unknown section '" + section + "'", line_no, 1);
    }
  }
  if (worlds.empty()) throw ModelError("no worlds declared");
  if (ref.empty()) throw ModelError("no reference world declared");
  {
    auto sorted = worlds;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw ModelError("duplicate world id");
  }
  auto id = [&](const std::string& name) {
    auto it = std::find(worlds.begin(), worlds.end(), name);
    if (it == worlds.end()) throw ModelError("unknown world id '" + name + "'");
    return static_cast<std::size_t>(it - worlds.begin());
  };

  std::vector<std::string> prop_names;
  for (const auto& p : props) prop_names.push_back(p.first);
  Alphabet alphabet(prop_names);
  std::vector<Letter> letters(worlds.size(), 0);
  for (const auto& [name, members] : props) {
    const Letter bit = Letter{1} << *alphabet.index(name);
    for (const auto& m : members) letters[id(m)] |= bit;
  }
  std::vector<LassoTrace> traces;
  for (Letter a : letters) traces.emplace_back(alphabet, std::vector<Letter>{}, std::vector<Letter>{a});

  WorldSet uni(worlds.size());
  if (universe) {
    for (const auto& u : *universe) uni.set(id(u));
  } else {
    uni.set();
  }
  Preorder pre = closure_preorder(order, worlds, ref);
  return EvaluationContext(worlds, std::move(traces), std::move(uni), std::move(pre));
}

}  // namespace qcf
