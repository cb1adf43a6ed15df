#ifndef CONTRAST_REALIZE_HPP
#define CONTRAST_REALIZE_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "contrast/error.hpp"
#include "contrast/transform.hpp"

namespace contrast::realize {

// Pluggable surface scorer; lower is better, perplexity-like.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual double score(const std::string& surface) = 0;
};

struct ScorerFailure : Error {
  using Error::Error;
};

struct UnigramEntry {
  std::string_view token;
  std::uint32_t count;
};

// The bundled frequency table backing the default scorer.
std::span<const UnigramEntry> unigram_table();

// Lowercased tokens with surrounding punctuation stripped; the token
// normalization shared by the scorer and the passive pattern.
std::vector<std::string> surface_tokens(const std::string& surface);

// Negative mean log relative frequency under the bundled table; unknown
// tokens cost log(table size). Deterministic; empty input scores as the
// maximum finite double so it never beats a real candidate.
double default_score(const std::string& surface);

class UnigramScorer : public Scorer {
 public:
  double score(const std::string& surface) override { return default_score(surface); }
};

struct Candidate {
  std::string surface;
  double score;
};

// Surface test for passive voice: a form of be followed within two tokens
// by a participle (-ed/-en or irregular).
bool passive_surface(const std::string& surface);

// With PassiveRequired, keeps only passive-looking surfaces. With no
// constraints, drops passive-looking surfaces so unconstrained transforms
// do not drift into passive voice; when every candidate looks passive
// (it-cleft relatives routinely do) the input is kept unchanged.
std::vector<std::string> filter_candidates(
    const std::vector<std::string>& surfaces,
    const std::set<transform::Constraint>& constraints);

// Minimal score wins; ties break toward the lexicographically smaller
// surface. Empty input selects nothing. Candidates the scorer cannot
// score are skipped; ScorerFailure only if it fails on all of them.
std::optional<Candidate> select_surface(const std::vector<std::string>& surfaces,
                                        Scorer& scorer);

}  // namespace contrast::realize

#endif
