#include "contrast/eval.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "contrast/realize.hpp"

namespace contrast::eval {

using nli::ContrastRecord;
using nli::Label;

JoinError::JoinError(std::vector<std::string> orphans)
    : Error([&orphans] {
        std::string msg = "predictions with no matching record:";
        for (const auto& o : orphans) msg += " " + o;
        return msg;
      }()),
      orphans(std::move(orphans)) {}

EvalReport evaluate(const std::vector<ContrastRecord>& records,
                    const std::vector<PredictionPair>& predictions) {
  // only ok records carry a transformed label to score against
  std::map<std::pair<std::string, std::string>, const ContrastRecord*> by_key;
  std::set<std::string> specs;
  for (const auto& rec : records) {
    if (rec.status != nli::Status::Ok) continue;
    by_key[{rec.pair_id, rec.spec}] = &rec;
    specs.insert(rec.spec);
  }

  std::map<std::string, SpecMetrics> metrics;
  for (const auto& spec : specs) metrics[spec].spec = spec;

  std::vector<std::string> orphans;
  for (const auto& pred : predictions) {
    auto it = by_key.find({pred.pair_id, pred.spec});
    if (it == by_key.end()) {
      orphans.push_back(pred.pair_id + "/" + pred.spec);
      continue;
    }
    const ContrastRecord& rec = *it->second;
    SpecMetrics& m = metrics[pred.spec];
    ++m.n;
    if (pred.pred_original == rec.label_original) ++m.ori_correct;
    if (pred.pred_contrast == *rec.label_transformed) ++m.ctr_correct;
    if (pred.pred_original == pred.pred_contrast) ++m.consistent;
  }
  if (!orphans.empty()) throw JoinError(std::move(orphans));

  EvalReport report;
  for (auto& [spec, m] : metrics) {
    if (m.n == 0)
      throw EmptySpecError("spec " + spec + " has records but no predictions");
    report.rows.push_back(m);
  }
  return report;
}

std::string format_percent(long long num, long long den) {
  if (den == 0) return "0.00";
  // percentage scaled to four digits past the point, then half-even rounded
  // to two; integer arithmetic throughout
  long long scaled = num * 10000;
  long long q = scaled / den;
  long long r = scaled % den;
  if (2 * r > den || (2 * r == den && q % 2 != 0)) ++q;
  std::string digits = std::to_string(q / 100);
  long long frac = q % 100;
  std::string out = digits + ".";
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

std::string report_table(const EvalReport& report) {
  std::vector<std::string> headers = {"spec", "n", "Acc@Ori", "Acc@Ctr",
                                      "Consistency"};
  std::vector<std::vector<std::string>> rows;
  for (const auto& m : report.rows)
    rows.push_back({m.spec, std::to_string(m.n),
                    format_percent(m.ori_correct, m.n),
                    format_percent(m.ctr_correct, m.n),
                    format_percent(m.consistent, m.n)});

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
  return out.str();
}

using nlohmann::json;

std::string report_json(const EvalReport& report) {
  json rows = json::array();
  for (const auto& m : report.rows) {
    json row;
    row["spec"] = m.spec;
    row["n"] = m.n;
    row["acc_at_ori"] = format_percent(m.ori_correct, m.n);
    row["acc_at_ctr"] = format_percent(m.ctr_correct, m.n);
    row["consistency"] = format_percent(m.consistent, m.n);
    rows.push_back(row);
  }
  json out;
  out["specs"] = rows;
  return out.dump(2) + "\n";
}

std::vector<PredictionPair> load_predictions_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open predictions " + path);
  std::vector<PredictionPair> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto where = [&] { return path + ":" + std::to_string(lineno); };
    json row;
    try {
      row = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(where() + ": " + e.what());
    }
    PredictionPair pred;
    try {
      pred.pair_id = row.at("pair_id").get<std::string>();
      pred.spec = row.at("spec").get<std::string>();
      auto po = nli::label_from_string(row.at("pred_original").get<std::string>());
      auto pc = nli::label_from_string(row.at("pred_contrast").get<std::string>());
      if (!po || !pc) throw Error(where() + ": bad prediction label");
      pred.pred_original = *po;
      pred.pred_contrast = *pc;
    } catch (const json::exception& e) {
      throw Error(where() + ": " + e.what());
    }
    out.push_back(std::move(pred));
  }
  return out;
}

void write_predictions_jsonl(const std::string& path,
                             const std::vector<PredictionPair>& predictions) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto& pred : predictions) {
    json row;
    row["pair_id"] = pred.pair_id;
    row["spec"] = pred.spec;
    row["pred_original"] = nli::to_string(pred.pred_original);
    row["pred_contrast"] = nli::to_string(pred.pred_contrast);
    out << row.dump() << "\n";
  }
}

// ---------------------------------------------------------------------------
// Corpus analysis

namespace {

bool has_pred(const mrs::Mrs& m, const std::string& pred) {
  return std::any_of(m.rels.begin(), m.rels.end(),
                     [&pred](const mrs::Ep& ep) { return ep.pred == pred; });
}

std::vector<Phenomenon> phenomena_of(const std::string& sentence,
                                     const mrs::Mrs& parse) {
  std::vector<Phenomenon> out;
  auto tense = parse.feature(parse.index.id, "TENSE");
  if (tense == "pres") out.push_back(Phenomenon::Pres);
  else if (tense == "past") out.push_back(Phenomenon::Past);
  else if (tense == "fut") out.push_back(Phenomenon::Fut);
  if (realize::passive_surface(sentence)) out.push_back(Phenomenon::Passive);
  if (has_pred(parse, "_may_v_modal")) out.push_back(Phenomenon::May);
  if (has_pred(parse, "_be_v_itcleft")) out.push_back(Phenomenon::ItCleft);
  return out;
}

}  // namespace

CorpusStats analyze_corpus(const std::vector<std::string>& sentences,
                           adapter::Adapter& adapter) {
  CorpusStats stats;
  for (const auto& sentence : sentences) {
    auto parses = adapter.parse(sentence);
    if (parses.empty()) {
      ++stats.unparsed;
      continue;
    }
    ++stats.parsed;
    const mrs::Mrs& top = parses.front();
    auto tense = top.feature(top.index.id, "TENSE");
    if (tense == "pres") ++stats.tense_pres;
    else if (tense == "past") ++stats.tense_past;
    else if (tense == "fut") ++stats.tense_fut;
    else ++stats.tense_untensed;
    if (realize::passive_surface(sentence)) ++stats.passive;
    if (has_pred(top, "_may_v_modal")) ++stats.may_modality;
    if (has_pred(top, "_be_v_itcleft")) ++stats.itcleft;
  }
  return stats;
}

std::string corpus_stats_json(const CorpusStats& stats) {
  json out;
  out["parsed"] = stats.parsed;
  out["unparsed"] = stats.unparsed;
  out["tense"] = {{"pres", stats.frac(stats.tense_pres)},
                  {"past", stats.frac(stats.tense_past)},
                  {"fut", stats.frac(stats.tense_fut)},
                  {"untensed", stats.frac(stats.tense_untensed)}};
  out["passive"] = stats.frac(stats.passive);
  out["may_modality"] = stats.frac(stats.may_modality);
  out["itcleft"] = stats.frac(stats.itcleft);
  return out.dump(2) + "\n";
}

std::string to_string(Phenomenon p) {
  switch (p) {
    case Phenomenon::Pres: return "pres";
    case Phenomenon::Past: return "past";
    case Phenomenon::Fut: return "fut";
    case Phenomenon::Passive: return "passive";
    case Phenomenon::May: return "may";
    case Phenomenon::ItCleft: return "itcleft";
  }
  return "?";
}

PairTypeMatrix pair_type_scan(const std::vector<nli::NliInstance>& dataset,
                              adapter::Adapter& adapter) {
  PairTypeMatrix matrix;
  for (const auto& inst : dataset) {
    auto premise_parses = adapter.parse(inst.premise);
    auto hypothesis_parses = adapter.parse(inst.hypothesis);
    if (premise_parses.empty() || hypothesis_parses.empty()) {
      ++matrix.pairs_unparsed;
      continue;
    }
    ++matrix.pairs_scanned;
    auto p_feats = phenomena_of(inst.premise, premise_parses.front());
    auto h_feats = phenomena_of(inst.hypothesis, hypothesis_parses.front());
    for (Phenomenon p : p_feats)
      for (Phenomenon h : h_feats)
        ++matrix.counts[static_cast<std::size_t>(p)][static_cast<std::size_t>(h)];
  }
  return matrix;
}

std::string pair_type_table(const PairTypeMatrix& matrix) {
  std::size_t width = 8;
  for (auto p : kPhenomena) width = std::max(width, to_string(p).size() + 2);
  std::ostringstream out;
  out << std::string(width, ' ');
  for (auto h : kPhenomena) {
    std::string name = to_string(h);
    out << std::string(width - name.size(), ' ') << name;
  }
  out << "\n";
  for (auto p : kPhenomena) {
    std::string name = to_string(p);
    out << name << std::string(width - name.size(), ' ');
    for (auto h : kPhenomena) {
      std::string cell = std::to_string(matrix.at(p, h));
      out << std::string(width - cell.size(), ' ') << cell;
    }
    out << "\n";
  }
  out << "pairs scanned: " << matrix.pairs_scanned
      << ", pairs with an unparsed side: " << matrix.pairs_unparsed << "\n";
  return out.str();
}

}  // namespace contrast::eval
