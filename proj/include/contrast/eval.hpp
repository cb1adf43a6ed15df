#ifndef CONTRAST_EVAL_HPP
#define CONTRAST_EVAL_HPP

#include <array>
#include <string>
#include <vector>

#include "contrast/adapter.hpp"
#include "contrast/nli.hpp"

namespace contrast::eval {

struct PredictionPair {
  std::string pair_id;
  std::string spec;
  nli::Label pred_original = nli::Label::Neutral;
  nli::Label pred_contrast = nli::Label::Neutral;
};

// Per-spec metrics kept as integer counts so reports stay exact.
struct SpecMetrics {
  std::string spec;
  int n = 0;
  int ori_correct = 0;
  int ctr_correct = 0;
  int consistent = 0;

  double acc_at_ori() const { return n ? static_cast<double>(ori_correct) / n : 0; }
  double acc_at_ctr() const { return n ? static_cast<double>(ctr_correct) / n : 0; }
  double consistency() const { return n ? static_cast<double>(consistent) / n : 0; }
};

struct EvalReport {
  std::vector<SpecMetrics> rows;  // sorted by spec name
};

struct JoinError : Error {
  std::vector<std::string> orphans;
  explicit JoinError(std::vector<std::string> orphans);
};

struct EmptySpecError : Error {
  using Error::Error;
};

// Joins predictions to ok-status records on (pair_id, spec) and computes
// Acc@Ori, Acc@Ctr and consistency per spec. Predictions that match no
// record are an error; a spec whose records attract no predictions is too.
EvalReport evaluate(const std::vector<nli::ContrastRecord>& records,
                    const std::vector<PredictionPair>& predictions);

// Percentage with two decimals, round half to even; num/den is the exact
// fraction.
std::string format_percent(long long num, long long den);

std::string report_table(const EvalReport& report);
std::string report_json(const EvalReport& report);

std::vector<PredictionPair> load_predictions_jsonl(const std::string& path);
void write_predictions_jsonl(const std::string& path,
                             const std::vector<PredictionPair>& predictions);

struct CorpusStats {
  int parsed = 0;
  int unparsed = 0;
  int tense_pres = 0;
  int tense_past = 0;
  int tense_fut = 0;
  int tense_untensed = 0;
  int passive = 0;
  int may_modality = 0;
  int itcleft = 0;

  double frac(int n) const { return parsed ? static_cast<double>(n) / parsed : 0; }
};

// Parses each sentence and tallies tense of the index event, may-modality
// and it-cleft EPs, and surface-passive sentences. Unparseable sentences
// are counted separately.
CorpusStats analyze_corpus(const std::vector<std::string>& sentences,
                           adapter::Adapter& adapter);

std::string corpus_stats_json(const CorpusStats& stats);

// Sentence-level phenomenon flags used by the pair-type matrix.
enum class Phenomenon { Pres, Past, Fut, Passive, May, ItCleft };
inline constexpr std::array<Phenomenon, 6> kPhenomena = {
    Phenomenon::Pres, Phenomenon::Past, Phenomenon::Fut,
    Phenomenon::Passive, Phenomenon::May, Phenomenon::ItCleft};
std::string to_string(Phenomenon p);

struct PairTypeMatrix {
  // counts[premise-phenomenon][hypothesis-phenomenon]
  std::array<std::array<int, 6>, 6> counts{};
  int pairs_scanned = 0;
  int pairs_unparsed = 0;  // at least one side had no parse

  int at(Phenomenon p, Phenomenon h) const {
    return counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(h)];
  }
};

// Cross product of the phenomenon sets of the two sides, one increment
// per (premise feature, hypothesis feature) combination.
PairTypeMatrix pair_type_scan(const std::vector<nli::NliInstance>& dataset,
                              adapter::Adapter& adapter);

std::string pair_type_table(const PairTypeMatrix& matrix);

}  // namespace contrast::eval

#endif
