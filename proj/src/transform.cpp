#include "contrast/transform.hpp"

#include <algorithm>

namespace contrast::transform {

using mrs::Ep;
using mrs::Mrs;
using mrs::Var;

std::string token(Kind k) {
  switch (k) {
    case Kind::Original: return "o";
    case Kind::Present: return "pr";
    case Kind::Past: return "p";
    case Kind::Future: return "f";
    case Kind::ModalMay: return "m";
    case Kind::Negation: return "neg";
    case Kind::ItCleft: return "i";
    case Kind::ItCleftArg1: return "i1";
    case Kind::ItCleftArg2: return "i2";
    case Kind::Passive: return "pa";
    case Kind::Swap: return "sw";
    case Kind::PolarQuestion: return "pq";
  }
  return "?";
}

std::optional<Kind> kind_from_token(std::string_view t) {
  if (t == "o") return Kind::Original;
  if (t == "pr") return Kind::Present;
  if (t == "p") return Kind::Past;
  if (t == "f") return Kind::Future;
  if (t == "m") return Kind::ModalMay;
  if (t == "neg") return Kind::Negation;
  if (t == "i") return Kind::ItCleft;
  if (t == "i1") return Kind::ItCleftArg1;
  if (t == "i2") return Kind::ItCleftArg2;
  if (t == "pa") return Kind::Passive;
  if (t == "sw") return Kind::Swap;
  if (t == "pq") return Kind::PolarQuestion;
  return std::nullopt;
}

RoleUnavailableError::RoleUnavailableError(const std::string& role,
                                           const std::string& why)
    : Error("role " + role + " unavailable: " + why), role(role) {}

RuleError::RuleError(Kind failing, const std::string& why)
    : Error("transform " + token(failing) + " failed: " + why),
      failing(failing) {}

namespace {

const char* tense_value(Tense t) {
  switch (t) {
    case Tense::Pres: return "pres";
    case Tense::Past: return "past";
    case Tense::Fut: return "fut";
  }
  return "?";
}

Var& top_qeq_target(Mrs& m) {
  for (auto& q : m.hcons)
    if (q.hi == m.top) return q.lo;
  throw Error("no top qeq");  // unreachable on a valid Mrs
}

// The feature bundle the grammar expects on an inserted finite event.
mrs::Features inserted_event_features() {
  return {{"SF", "prop"},
          {"TENSE", "pres"},
          {"MOOD", "indicative"},
          {"PROG", "-"},
          {"PERF", "-"}};
}

}  // namespace

Mrs apply_tense(const Mrs& m, Tense tense) {
  const Ep& verb = mrs::main_verb(m);
  const Var* event = verb.arg("ARG0");
  Mrs out = m;
  bool replaced = false;
  for (auto& [name, value] : out.features[event->id]) {
    if (name == "TENSE") {
      value = tense_value(tense);
      replaced = true;
      break;
    }
  }
  if (!replaced)
    throw NotTensedError("main verb event " + event->name() +
                         " carries no TENSE feature");
  return out;
}

Mrs apply_itcleft(const Mrs& m, CleftArg which) {
  const std::string role = which == CleftArg::Arg1 ? "ARG1" : "ARG2";
  const Ep& verb = mrs::main_verb(m);
  const Var* focus = verb.arg(role);
  if (!focus)
    throw RoleUnavailableError(role, "main verb " + verb.pred + " lacks it");
  if (focus->sort != "x")
    throw RoleUnavailableError(role, focus->name() + " is not an instance variable");

  Mrs out = m;
  Var label = mrs::fresh_variable(out, "h");
  Var event{"e", label.id + 1};
  Ep cleft;
  cleft.pred = "_be_v_itcleft";
  cleft.label = label;
  cleft.args.emplace_back("ARG0", event);
  cleft.args.emplace_back("ARG1", *focus);
  cleft.args.emplace_back("ARG2", verb.label);
  out.rels.push_back(cleft);
  out.features[event.id] = inserted_event_features();
  top_qeq_target(out) = label;
  out.index = event;
  return out;
}

Mrs apply_modality_may(const Mrs& m) {
  const Ep& verb = mrs::main_verb(m);
  Mrs out = m;
  Var label = mrs::fresh_variable(out, "h");
  Var event{"e", label.id + 1};
  Var hole{"h", label.id + 2};
  Ep modal;
  modal.pred = "_may_v_modal";
  modal.label = label;
  modal.args.emplace_back("ARG0", event);
  modal.args.emplace_back("ARG1", hole);
  out.rels.push_back(modal);
  out.features[event.id] = inserted_event_features();
  out.hcons.push_back(mrs::Qeq{hole, verb.label});
  top_qeq_target(out) = label;
  out.index = event;
  return out;
}

Mrs apply_negation(const Mrs& m) {
  const Ep& verb = mrs::main_verb(m);
  Mrs out = m;
  Var label = mrs::fresh_variable(out, "h");
  Var event{"e", label.id + 1};
  Var hole{"h", label.id + 2};
  Ep neg;
  neg.pred = "neg";
  neg.label = label;
  neg.args.emplace_back("ARG0", event);
  neg.args.emplace_back("ARG1", hole);
  out.rels.push_back(neg);
  out.hcons.push_back(mrs::Qeq{hole, verb.label});
  top_qeq_target(out) = label;
  return out;
}

Mrs apply_swap(const Mrs& m) {
  const Ep& verb = mrs::main_verb(m);
  const Var* a1 = verb.arg("ARG1");
  const Var* a2 = verb.arg("ARG2");
  if (!a1 || a1->sort != "x")
    throw RoleUnavailableError("ARG1", "main verb " + verb.pred +
                                           " has no instance ARG1");
  if (!a2 || a2->sort != "x")
    throw RoleUnavailableError("ARG2", "main verb " + verb.pred +
                                           " has no instance ARG2");
  Mrs out = m;
  Ep& ep = out.rels[static_cast<std::size_t>(&verb - m.rels.data())];
  std::swap(*ep.arg("ARG1"), *ep.arg("ARG2"));
  return out;
}

RewriteResult require_passive(RewriteResult r) {
  const Ep& verb = mrs::main_verb(r.mrs);
  const Var* a2 = verb.arg("ARG2");
  if (!a2 || a2->sort != "x")
    throw RoleUnavailableError("ARG2", "main verb " + verb.pred +
                                           " has nothing to promote");
  r.constraints.insert(Constraint::PassiveRequired);
  r.applied.push_back(Kind::Passive);
  return r;
}

namespace {

int canonical_rank(Kind k) {
  switch (k) {
    case Kind::Swap: return 0;
    case Kind::Negation: return 1;
    case Kind::PolarQuestion: return 2;
    case Kind::Present:
    case Kind::Past:
    case Kind::Future: return 3;
    case Kind::ModalMay: return 4;
    case Kind::ItCleft:
    case Kind::ItCleftArg1:
    case Kind::ItCleftArg2: return 5;
    case Kind::Passive: return 6;
    case Kind::Original: return -1;  // dropped before sorting
  }
  return 99;
}

}  // namespace

RewriteResult compose(const Mrs& m, const std::vector<Kind>& transforms) {
  std::vector<Kind> stack;
  for (Kind k : transforms)
    if (k != Kind::Original) stack.push_back(k);
  std::stable_sort(stack.begin(), stack.end(), [](Kind a, Kind b) {
    return canonical_rank(a) < canonical_rank(b);
  });

  RewriteResult result{m, {}, {}};
  for (Kind k : stack) {
    try {
      switch (k) {
        case Kind::Swap:
          result.mrs = apply_swap(result.mrs);
          break;
        case Kind::Negation:
          result.mrs = apply_negation(result.mrs);
          break;
        case Kind::Present:
          result.mrs = apply_tense(result.mrs, Tense::Pres);
          break;
        case Kind::Past:
          result.mrs = apply_tense(result.mrs, Tense::Past);
          break;
        case Kind::Future:
          result.mrs = apply_tense(result.mrs, Tense::Fut);
          break;
        case Kind::ModalMay:
          result.mrs = apply_modality_may(result.mrs);
          break;
        case Kind::ItCleftArg1:
          result.mrs = apply_itcleft(result.mrs, CleftArg::Arg1);
          break;
        case Kind::ItCleftArg2:
          result.mrs = apply_itcleft(result.mrs, CleftArg::Arg2);
          break;
        case Kind::ItCleft: {
          // Prefer ARG1; fall back to ARG2. Record which was used.
          const Ep& verb = mrs::main_verb(result.mrs);
          const Var* a1 = verb.arg("ARG1");
          if (a1 && a1->sort == "x") {
            result.mrs = apply_itcleft(result.mrs, CleftArg::Arg1);
            result.applied.push_back(Kind::ItCleftArg1);
          } else {
            result.mrs = apply_itcleft(result.mrs, CleftArg::Arg2);
            result.applied.push_back(Kind::ItCleftArg2);
          }
          continue;
        }
        case Kind::Passive:
          result = require_passive(std::move(result));
          continue;  // require_passive records itself in `applied`
        case Kind::PolarQuestion:
          throw UnimplementedTransformError(
              "polar questions are reserved but have no rewrite");
        case Kind::Original:
          continue;
      }
    } catch (const RuleError&) {
      throw;
    } catch (const Error& e) {
      throw RuleError(k, e.what());
    }
    result.applied.push_back(k);
  }
  return result;
}

}  // namespace contrast::transform
