#ifndef CONTRAST_NLI_HPP
#define CONTRAST_NLI_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "contrast/adapter.hpp"
#include "contrast/realize.hpp"
#include "contrast/transform.hpp"

namespace contrast::nli {

enum class Label { Entailment, Neutral, Contradiction };

std::string to_string(Label label);
std::optional<Label> label_from_string(const std::string& s);

struct NliInstance {
  std::string pair_id;
  std::string premise;
  std::string hypothesis;
  Label label = Label::Neutral;
  std::optional<std::string> genre;
};

// A parsed pair spec like "f;p +pa": one base token per side, add-on
// tokens appended to both sides.
struct PairSpec {
  transform::Kind premise_base = transform::Kind::Original;
  transform::Kind hypothesis_base = transform::Kind::Original;
  std::vector<transform::Kind> addons;
  std::vector<transform::Kind> premise_transforms;    // base + addons, o dropped
  std::vector<transform::Kind> hypothesis_transforms;
  std::string canonical_name;
};

struct SpecSyntaxError : Error {
  std::size_t position;
  SpecSyntaxError(std::size_t position, const std::string& why);
};

struct UnknownTokenError : Error {
  std::string token;
  explicit UnknownTokenError(const std::string& token);
};

struct NoRuleError : Error {
  using Error::Error;
};

struct DuplicateIdError : Error {
  using Error::Error;
};

PairSpec parse_pair_spec(const std::string& s);

// The ten specs the batch commands run by default.
std::vector<PairSpec> default_pair_specs();

// Label rule engine. Meaning-preserving bases {o, i, pa} keep the label;
// may-insertion against o and the decoupled tense pairs p;f / f;p map
// everything to neutral. Add-ons from {i, pa} never change the class.
// Throws NoRuleError for neg, sw and unclassified combinations.
Label infer_label(Label original, const PairSpec& spec);
bool has_label_rule(const PairSpec& spec);

enum class Status { Ok, ParseFailed, RuleFailed, GenerationFailed, NoLabelRule };

std::string to_string(Status s);
std::optional<Status> status_from_string(const std::string& s);

struct ContrastRecord {
  std::string pair_id;
  std::string spec;
  std::string premise_original;
  std::string hypothesis_original;
  std::optional<std::string> premise_transformed;
  std::optional<std::string> hypothesis_transformed;
  Label label_original = Label::Neutral;
  std::optional<Label> label_transformed;
  Status status = Status::Ok;
};

// Memo of sentence -> analyses for one worker; purely an optimization.
using ParseCache = std::map<std::string, std::vector<mrs::Mrs>>;

struct TransformOutcome {
  Status status = Status::Ok;
  std::string surface;  // set when status == Ok
};

// parse (top analysis only), compose, generate, filter, select.
// Stage failures come back as statuses, not exceptions; adapter faults
// still throw.
TransformOutcome transform_sentence(const std::string& sentence,
                                    const std::vector<transform::Kind>& stack,
                                    adapter::Adapter& adapter,
                                    realize::Scorer& scorer,
                                    ParseCache* cache = nullptr);

// Both sides per their stacks; an empty stack copies the original.
ContrastRecord transform_pair(const NliInstance& instance, const PairSpec& spec,
                              adapter::Adapter& adapter, realize::Scorer& scorer,
                              ParseCache* cache = nullptr);

struct SpecCoverage {
  int attempted = 0;
  int ok = 0;  // includes no_label_rule records: the transformation succeeded
  int parse_failed = 0;
  int rule_failed = 0;
  int generation_failed = 0;
  int no_label_rule = 0;
};

struct CoverageStats {
  std::vector<std::pair<std::string, SpecCoverage>> per_spec;  // spec order
  int pairs = 0;
  int pairs_with_ok = 0;  // >= 1 ok record under a non-identity spec
  int skipped_unlabeled = 0;
};

struct ContrastSet {
  std::vector<PairSpec> specs;
  std::vector<std::vector<ContrastRecord>> records;  // [spec][pair], input order
  CoverageStats coverage;
};

using AdapterFactory = std::function<std::unique_ptr<adapter::Adapter>()>;
using ScorerFactory = std::function<std::unique_ptr<realize::Scorer>()>;
using Progress = std::function<void(std::size_t tasks_done, std::size_t total)>;

// Transforms every pair under every spec. Pairs are independent work
// items; workers > 1 runs them on a thread pool, one adapter and scorer
// per worker, with results assembled in input order.
ContrastSet build_contrast_set(const std::vector<NliInstance>& dataset,
                               const std::vector<PairSpec>& specs,
                               const AdapterFactory& make_adapter,
                               const ScorerFactory& make_scorer,
                               int workers = 1,
                               const Progress& progress = nullptr);

// Originals plus all ok records of non-compositional specs other than
// o;o, ids suffixed "#<spec>". Deterministic order.
std::vector<NliInstance> build_augmented_set(
    const std::vector<NliInstance>& dataset, const ContrastSet& set);

struct Dataset {
  std::vector<NliInstance> instances;
  int skipped_unlabeled = 0;  // gold_label "-" rows
};

// SNLI/MNLI distribution format: one JSON object per line with fields
// sentence1, sentence2, gold_label, pairID and optional genre.
Dataset load_dataset_jsonl(const std::string& path);
void write_dataset_jsonl(const std::string& path,
                         const std::vector<NliInstance>& instances);

void write_contrast_records_jsonl(const std::string& path,
                                  const std::vector<ContrastRecord>& records);
std::vector<ContrastRecord> load_contrast_records_jsonl(const std::string& path);

std::string coverage_table(const CoverageStats& stats);
std::string coverage_json(const CoverageStats& stats);

}  // namespace contrast::nli

#endif
