#include "contrast/realize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace contrast::realize {

std::vector<std::string> surface_tokens(const std::string& surface) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    // strip leading/trailing punctuation, keep internal apostrophes
    std::size_t b = 0;
    std::size_t e = current.size();
    while (b < e && !std::isalnum(static_cast<unsigned char>(current[b]))) ++b;
    while (e > b && !std::isalnum(static_cast<unsigned char>(current[e - 1]))) --e;
    if (e > b) tokens.push_back(current.substr(b, e - b));
    current.clear();
  };
  for (char c : surface) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return tokens;
}

namespace {

double table_total() {
  static const double total = [] {
    double sum = 0;
    for (const auto& e : unigram_table()) sum += e.count;
    return sum;
  }();
  return total;
}

const std::map<std::string_view, std::uint32_t>& table_index() {
  static const std::map<std::string_view, std::uint32_t> index = [] {
    std::map<std::string_view, std::uint32_t> m;
    for (const auto& e : unigram_table()) m[e.token] = e.count;
    return m;
  }();
  return index;
}

}  // namespace

double default_score(const std::string& surface) {
  const auto tokens = surface_tokens(surface);
  if (tokens.empty()) return std::numeric_limits<double>::max();
  const double unknown_penalty = std::log(static_cast<double>(unigram_table().size()));
  const auto& index = table_index();
  double sum = 0;
  for (const auto& tok : tokens) {
    auto it = index.find(tok);
    if (it == index.end())
      sum += unknown_penalty;
    else
      sum += -std::log(it->second / table_total());
  }
  return sum / static_cast<double>(tokens.size());
}

namespace {

const std::set<std::string_view> kBeForms = {"is",   "are",  "was", "were",
                                             "be",   "been", "being"};

// Participles that neither -ed nor -en catches.
const std::set<std::string_view> kIrregularParticiples = {
    "begun",  "bent",   "blown",   "born",   "borne",  "bought", "bound",
    "brought", "built",  "caught", "cost",   "cut",    "dealt",  "done",
    "drawn",  "felt",   "flown",   "fought", "found",  "gone",   "ground",
    "grown",  "heard",  "held",    "hit",    "hung",   "hurt",   "kept",
    "known",  "laid",   "left",    "lent",   "lost",   "made",   "meant",
    "paid",   "put",    "read",    "rung",   "said",   "sent",   "set",
    "shown",  "shut",   "slept",   "sold",   "sought", "spent",  "spun",
    "stood",  "struck", "stuck",   "stung",  "sung",   "swung",  "sworn",
    "taught", "thought", "thrown", "told",   "torn",   "understood",
    "withdrawn", "won",  "worn"};

bool participle(const std::string& token) {
  if (kIrregularParticiples.count(token)) return true;
  if (token.size() < 3) return false;
  const auto tail = token.substr(token.size() - 2);
  return tail == "ed" || tail == "en";
}

}  // namespace

bool passive_surface(const std::string& surface) {
  const auto tokens = surface_tokens(surface);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!kBeForms.count(tokens[i])) continue;
    for (std::size_t j = i + 1; j < tokens.size() && j <= i + 2; ++j)
      if (participle(tokens[j])) return true;
  }
  return false;
}

std::vector<std::string> filter_candidates(
    const std::vector<std::string>& surfaces,
    const std::set<transform::Constraint>& constraints) {
  const bool want_passive =
      constraints.count(transform::Constraint::PassiveRequired) != 0;
  std::vector<std::string> kept;
  for (const auto& s : surfaces)
    if (passive_surface(s) == want_passive) kept.push_back(s);
  if (!want_passive && kept.empty()) return surfaces;
  return kept;
}

std::optional<Candidate> select_surface(const std::vector<std::string>& surfaces,
                                        Scorer& scorer) {
  if (surfaces.empty()) return std::nullopt;
  std::optional<Candidate> best;
  std::size_t failures = 0;
  std::string first_error;
  for (const auto& s : surfaces) {
    double score;
    try {
      score = scorer.score(s);
    } catch (const Error& e) {
      if (first_error.empty()) first_error = e.what();
      ++failures;
      continue;
    }
    if (!best || score < best->score ||
        (score == best->score && s < best->surface)) {
      best = Candidate{s, score};
    }
  }
  if (!best)
    throw ScorerFailure("scorer failed on all " + std::to_string(failures) +
                        " candidates: " + first_error);
  return best;
}

}  // namespace contrast::realize
