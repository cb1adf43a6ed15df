#include "contrast/nli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace contrast::nli {

using transform::Kind;

std::string to_string(Label label) {
  switch (label) {
    case Label::Entailment: return "entailment";
    case Label::Neutral: return "neutral";
    case Label::Contradiction: return "contradiction";
  }
  return "?";
}

std::optional<Label> label_from_string(const std::string& s) {
  if (s == "entailment") return Label::Entailment;
  if (s == "neutral") return Label::Neutral;
  if (s == "contradiction") return Label::Contradiction;
  return std::nullopt;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Ok: return "ok";
    case Status::ParseFailed: return "parse_failed";
    case Status::RuleFailed: return "rule_failed";
    case Status::GenerationFailed: return "generation_failed";
    case Status::NoLabelRule: return "no_label_rule";
  }
  return "?";
}

std::optional<Status> status_from_string(const std::string& s) {
  if (s == "ok") return Status::Ok;
  if (s == "parse_failed") return Status::ParseFailed;
  if (s == "rule_failed") return Status::RuleFailed;
  if (s == "generation_failed") return Status::GenerationFailed;
  if (s == "no_label_rule") return Status::NoLabelRule;
  return std::nullopt;
}

SpecSyntaxError::SpecSyntaxError(std::size_t position, const std::string& why)
    : Error("pair spec error at position " + std::to_string(position) + ": " +
            why),
      position(position) {}

UnknownTokenError::UnknownTokenError(const std::string& token)
    : Error("unknown transform token \"" + token + "\""), token(token) {}

// ---------------------------------------------------------------------------
// Pair specs

namespace {

Kind parse_token(const std::string& tok, std::size_t pos) {
  if (tok.empty()) throw SpecSyntaxError(pos, "empty transform token");
  auto kind = transform::kind_from_token(tok);
  if (!kind) throw UnknownTokenError(tok);
  return *kind;
}

}  // namespace

PairSpec parse_pair_spec(const std::string& s) {
  auto semi = s.find(';');
  if (semi == std::string::npos)
    throw SpecSyntaxError(s.size(), "expected ';' between the side tokens");

  PairSpec spec;
  spec.premise_base = parse_token(s.substr(0, semi), 0);

  std::size_t pos = semi + 1;
  std::size_t end = pos;
  while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) &&
         s[end] != '+')
    ++end;
  spec.hypothesis_base = parse_token(s.substr(pos, end - pos), pos);
  pos = end;

  std::vector<std::string> addon_tokens;
  while (pos < s.size()) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == s.size()) break;
    if (s[pos] != '+')
      throw SpecSyntaxError(pos, "expected '+' before an add-on token");
    ++pos;
    end = pos;
    while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end])) &&
           s[end] != '+')
      ++end;
    Kind addon = parse_token(s.substr(pos, end - pos), pos);
    spec.addons.push_back(addon);
    addon_tokens.push_back(transform::token(addon));
    pos = end;
  }

  auto fill = [&spec](Kind base, std::vector<Kind>& stack) {
    if (base != Kind::Original) stack.push_back(base);
    for (Kind a : spec.addons)
      if (a != Kind::Original) stack.push_back(a);
  };
  fill(spec.premise_base, spec.premise_transforms);
  fill(spec.hypothesis_base, spec.hypothesis_transforms);

  spec.canonical_name =
      transform::token(spec.premise_base) + ";" + transform::token(spec.hypothesis_base);
  for (const auto& t : addon_tokens) spec.canonical_name += " +" + t;
  return spec;
}

std::vector<PairSpec> default_pair_specs() {
  std::vector<PairSpec> specs;
  for (const char* name : {"o;o", "i;i", "pa;pa", "f;p", "p;f", "m;o",
                           "p;f +i", "p;f +pa", "f;p +i", "f;p +pa"})
    specs.push_back(parse_pair_spec(name));
  return specs;
}

namespace {

bool meaning_preserving(Kind k) {
  return k == Kind::Original || k == Kind::ItCleft || k == Kind::ItCleftArg1 ||
         k == Kind::ItCleftArg2 || k == Kind::Passive;
}

bool label_safe_addon(Kind k) {
  return meaning_preserving(k);  // add-ons from {i, pa} keep the class
}

}  // namespace

Label infer_label(Label original, const PairSpec& spec) {
  for (Kind a : spec.addons)
    if (!label_safe_addon(a))
      throw NoRuleError("no label rule for add-on " + transform::token(a) +
                        " in spec " + spec.canonical_name);
  const Kind p = spec.premise_base;
  const Kind h = spec.hypothesis_base;
  if (meaning_preserving(p) && meaning_preserving(h)) return original;
  if ((p == Kind::ModalMay && h == Kind::Original) ||
      (p == Kind::Original && h == Kind::ModalMay))
    return Label::Neutral;
  if ((p == Kind::Past && h == Kind::Future) ||
      (p == Kind::Future && h == Kind::Past))
    return Label::Neutral;
  throw NoRuleError("no label rule for spec " + spec.canonical_name);
}

bool has_label_rule(const PairSpec& spec) {
  try {
    infer_label(Label::Neutral, spec);
    return true;
  } catch (const NoRuleError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Transformation

TransformOutcome transform_sentence(const std::string& sentence,
                                    const std::vector<Kind>& stack,
                                    adapter::Adapter& adapter,
                                    realize::Scorer& scorer, ParseCache* cache) {
  const std::vector<mrs::Mrs>* parses = nullptr;
  std::vector<mrs::Mrs> fetched;
  if (cache) {
    auto it = cache->find(sentence);
    if (it == cache->end())
      it = cache->emplace(sentence, adapter.parse(sentence)).first;
    parses = &it->second;
  } else {
    fetched = adapter.parse(sentence);
    parses = &fetched;
  }
  if (parses->empty()) return {Status::ParseFailed, {}};

  transform::RewriteResult rewrite;
  try {
    rewrite = transform::compose(parses->front(), stack);
  } catch (const transform::RuleError&) {
    return {Status::RuleFailed, {}};
  }

  std::vector<std::string> surfaces = adapter.generate(rewrite.mrs);
  std::vector<std::string> unique;
  std::set<std::string> seen;
  for (auto& s : surfaces)
    if (seen.insert(s).second) unique.push_back(std::move(s));

  auto kept = realize::filter_candidates(unique, rewrite.constraints);
  auto best = realize::select_surface(kept, scorer);
  if (!best) return {Status::GenerationFailed, {}};
  return {Status::Ok, best->surface};
}

ContrastRecord transform_pair(const NliInstance& instance, const PairSpec& spec,
                              adapter::Adapter& adapter, realize::Scorer& scorer,
                              ParseCache* cache) {
  ContrastRecord rec;
  rec.pair_id = instance.pair_id;
  rec.spec = spec.canonical_name;
  rec.premise_original = instance.premise;
  rec.hypothesis_original = instance.hypothesis;
  rec.label_original = instance.label;

  auto run_side = [&](const std::string& side,
                      const std::vector<Kind>& stack) -> TransformOutcome {
    if (stack.empty()) return {Status::Ok, side};
    return transform_sentence(side, stack, adapter, scorer, cache);
  };

  TransformOutcome premise = run_side(instance.premise, spec.premise_transforms);
  if (premise.status != Status::Ok) {
    rec.status = premise.status;
    return rec;
  }
  TransformOutcome hypothesis =
      run_side(instance.hypothesis, spec.hypothesis_transforms);
  if (hypothesis.status != Status::Ok) {
    rec.status = hypothesis.status;
    return rec;
  }

  rec.premise_transformed = premise.surface;
  rec.hypothesis_transformed = hypothesis.surface;
  if (has_label_rule(spec)) {
    rec.label_transformed = infer_label(instance.label, spec);
    rec.status = Status::Ok;
  } else {
    rec.status = Status::NoLabelRule;
  }
  return rec;
}

namespace {

bool transform_succeeded(Status s) {
  return s == Status::Ok || s == Status::NoLabelRule;
}

CoverageStats tabulate(const std::vector<PairSpec>& specs,
                       const std::vector<std::vector<ContrastRecord>>& records,
                       int pairs, int skipped) {
  CoverageStats stats;
  stats.pairs = pairs;
  stats.skipped_unlabeled = skipped;
  for (std::size_t si = 0; si < specs.size(); ++si) {
    SpecCoverage cov;
    for (const auto& rec : records[si]) {
      ++cov.attempted;
      switch (rec.status) {
        case Status::Ok: ++cov.ok; break;
        case Status::NoLabelRule:
          ++cov.ok;
          ++cov.no_label_rule;
          break;
        case Status::ParseFailed: ++cov.parse_failed; break;
        case Status::RuleFailed: ++cov.rule_failed; break;
        case Status::GenerationFailed: ++cov.generation_failed; break;
      }
    }
    stats.per_spec.emplace_back(specs[si].canonical_name, cov);
  }
  for (int pi = 0; pi < pairs; ++pi) {
    for (std::size_t si = 0; si < specs.size(); ++si) {
      if (specs[si].canonical_name == "o;o") continue;
      if (transform_succeeded(records[si][pi].status)) {
        ++stats.pairs_with_ok;
        break;
      }
    }
  }
  return stats;
}

}  // namespace

ContrastSet build_contrast_set(const std::vector<NliInstance>& dataset,
                               const std::vector<PairSpec>& specs,
                               const AdapterFactory& make_adapter,
                               const ScorerFactory& make_scorer, int workers,
                               const Progress& progress) {
  if (workers < 1) throw Error("worker count must be >= 1");
  ContrastSet set;
  set.specs = specs;
  set.records.assign(specs.size(), std::vector<ContrastRecord>(dataset.size()));

  const std::size_t total = specs.size() * dataset.size();
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto tick = [&] {
    std::size_t d = done.fetch_add(1) + 1;
    if (progress) {
      std::lock_guard<std::mutex> lock(progress_mutex);
      progress(d, total);
    }
  };

  if (workers == 1 || total <= 1) {
    auto adapter = make_adapter();
    auto scorer = make_scorer();
    ParseCache cache;
    for (std::size_t si = 0; si < specs.size(); ++si)
      for (std::size_t pi = 0; pi < dataset.size(); ++pi) {
        set.records[si][pi] =
            transform_pair(dataset[pi], specs[si], *adapter, *scorer, &cache);
        tick();
      }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
      try {
        auto adapter = make_adapter();
        auto scorer = make_scorer();
        ParseCache cache;
        while (!failed) {
          std::size_t t = next.fetch_add(1);
          if (t >= total) break;
          std::size_t si = t / dataset.size();
          std::size_t pi = t % dataset.size();
          set.records[si][pi] =
              transform_pair(dataset[pi], specs[si], *adapter, *scorer, &cache);
          tick();
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed = true;
      }
    };
    std::vector<std::thread> pool;
    int n = static_cast<int>(std::min<std::size_t>(workers, total));
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  set.coverage = tabulate(specs, set.records, static_cast<int>(dataset.size()), 0);
  return set;
}

std::vector<NliInstance> build_augmented_set(
    const std::vector<NliInstance>& dataset, const ContrastSet& set) {
  std::vector<NliInstance> out = dataset;
  std::set<std::string> ids;
  for (const auto& inst : dataset)
    if (!ids.insert(inst.pair_id).second)
      throw DuplicateIdError("duplicate pair id " + inst.pair_id);

  for (std::size_t si = 0; si < set.specs.size(); ++si) {
    const auto& name = set.specs[si].canonical_name;
    if (name == "o;o" || name.find('+') != std::string::npos) continue;
    for (std::size_t pi = 0; pi < set.records[si].size(); ++pi) {
      const auto& rec = set.records[si][pi];
      if (rec.status != Status::Ok) continue;
      NliInstance inst;
      inst.pair_id = rec.pair_id + "#" + name;
      inst.premise = *rec.premise_transformed;
      inst.hypothesis = *rec.hypothesis_transformed;
      inst.label = *rec.label_transformed;
      inst.genre = pi < dataset.size() ? dataset[pi].genre : std::nullopt;
      if (!ids.insert(inst.pair_id).second)
        throw DuplicateIdError("duplicate pair id " + inst.pair_id);
      out.push_back(std::move(inst));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSONL I/O

using nlohmann::json;

Dataset load_dataset_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset " + path);
  Dataset ds;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    auto require = [&](const char* field) -> std::string {
      if (!row.contains(field) || !row[field].is_string())
        throw Error(path + ":" + std::to_string(lineno) +
                    ": missing string field " + field);
      return row[field].get<std::string>();
    };
    std::string gold = require("gold_label");
    if (gold == "-") {
      ++ds.skipped_unlabeled;
      continue;
    }
    NliInstance inst;
    inst.pair_id = require("pairID");
    inst.premise = require("sentence1");
    inst.hypothesis = require("sentence2");
    auto label = label_from_string(gold);
    if (!label)
      throw Error(path + ":" + std::to_string(lineno) + ": bad gold_label \"" +
                  gold + "\"");
    inst.label = *label;
    if (row.contains("genre") && row["genre"].is_string())
      inst.genre = row["genre"].get<std::string>();
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

void write_dataset_jsonl(const std::string& path,
                         const std::vector<NliInstance>& instances) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto& inst : instances) {
    json row;
    row["pairID"] = inst.pair_id;
    row["sentence1"] = inst.premise;
    row["sentence2"] = inst.hypothesis;
    row["gold_label"] = to_string(inst.label);
    if (inst.genre) row["genre"] = *inst.genre;
    out << row.dump() << "\n";
  }
}

void write_contrast_records_jsonl(const std::string& path,
                                  const std::vector<ContrastRecord>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto& rec : records) {
    json row;
    row["pair_id"] = rec.pair_id;
    row["spec"] = rec.spec;
    row["premise_original"] = rec.premise_original;
    row["hypothesis_original"] = rec.hypothesis_original;
    if (rec.premise_transformed) row["premise_transformed"] = *rec.premise_transformed;
    if (rec.hypothesis_transformed)
      row["hypothesis_transformed"] = *rec.hypothesis_transformed;
    row["label_original"] = to_string(rec.label_original);
    if (rec.label_transformed)
      row["label_transformed"] = to_string(*rec.label_transformed);
    row["status"] = to_string(rec.status);
    out << row.dump() << "\n";
  }
}

std::vector<ContrastRecord> load_contrast_records_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open records " + path);
  std::vector<ContrastRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    auto where = [&] { return path + ":" + std::to_string(lineno); };
    ContrastRecord rec;
    try {
      rec.pair_id = row.at("pair_id").get<std::string>();
      rec.spec = row.at("spec").get<std::string>();
      rec.premise_original = row.at("premise_original").get<std::string>();
      rec.hypothesis_original = row.at("hypothesis_original").get<std::string>();
      auto label = label_from_string(row.at("label_original").get<std::string>());
      auto status = status_from_string(row.at("status").get<std::string>());
      if (!label || !status) throw Error(where() + ": bad label or status");
      rec.label_original = *label;
      rec.status = *status;
      if (row.contains("premise_transformed"))
        rec.premise_transformed = row["premise_transformed"].get<std::string>();
      if (row.contains("hypothesis_transformed"))
        rec.hypothesis_transformed =
            row["hypothesis_transformed"].get<std::string>();
      if (row.contains("label_transformed")) {
        auto lt = label_from_string(row["label_transformed"].get<std::string>());
        if (!lt) throw Error(where() + ": bad label_transformed");
        rec.label_transformed = *lt;
      }
    } catch (const json::exception& e) {
      throw Error(where() + ": " + e.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coverage reports

std::string coverage_table(const CoverageStats& stats) {
  const std::vector<std::string> headers = {"spec",        "attempted",
                                            "ok",          "parse_failed",
                                            "rule_failed", "generation_failed",
                                            "no_label_rule"};
  std::vector<std::vector<std::string>> rows;
  SpecCoverage total;
  for (const auto& [name, cov] : stats.per_spec) {
    rows.push_back({name, std::to_string(cov.attempted), std::to_string(cov.ok),
                    std::to_string(cov.parse_failed),
                    std::to_string(cov.rule_failed),
                    std::to_string(cov.generation_failed),
                    std::to_string(cov.no_label_rule)});
    total.attempted += cov.attempted;
    total.ok += cov.ok;
    total.parse_failed += cov.parse_failed;
    total.rule_failed += cov.rule_failed;
    total.generation_failed += cov.generation_failed;
    total.no_label_rule += cov.no_label_rule;
  }
  rows.push_back({"total", std::to_string(total.attempted),
                  std::to_string(total.ok), std::to_string(total.parse_failed),
                  std::to_string(total.rule_failed),
                  std::to_string(total.generation_failed),
                  std::to_string(total.no_label_rule)});

  std::vector<std::size_t> widths(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) widths[c] = headers[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());

  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == 0)
        out << row[c] << std::string(widths[c] - row[c].size(), ' ');
      else
        out << "  " << std::string(widths[c] - row[c].size(), ' ') << row[c];
    }
    out << "\n";
  };
  emit(headers);
  for (const auto& row : rows) emit(row);
  out << "pairs with >=1 ok transform (non-identity specs): "
      << stats.pairs_with_ok << "/" << stats.pairs << "\n";
  if (stats.skipped_unlabeled > 0)
    out << "unlabeled rows skipped: " << stats.skipped_unlabeled << "\n";
  return out.str();
}

std::string coverage_json(const CoverageStats& stats) {
  json specs = json::array();
  for (const auto& [name, cov] : stats.per_spec) {
    json row;
    row["spec"] = name;
    row["attempted"] = cov.attempted;
    row["ok"] = cov.ok;
    row["parse_failed"] = cov.parse_failed;
    row["rule_failed"] = cov.rule_failed;
    row["generation_failed"] = cov.generation_failed;
    row["no_label_rule"] = cov.no_label_rule;
    specs.push_back(row);
  }
  json out;
  out["pairs"] = stats.pairs;
  out["pairs_with_ok"] = stats.pairs_with_ok;
  out["fraction_with_ok"] =
      stats.pairs == 0 ? 0.0
                       : static_cast<double>(stats.pairs_with_ok) / stats.pairs;
  out["skipped_unlabeled"] = stats.skipped_unlabeled;
  out["specs"] = specs;
  return out.dump(2) + "\n";
}

}  // namespace contrast::nli
