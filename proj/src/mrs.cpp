#include "contrast/mrs.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace contrast::mrs {

namespace {

const Features kNoFeatures{};

bool known_sort(const std::string& s) {
  return s == "e" || s == "x" || s == "h" || s == "i" || s == "u";
}

bool is_feature_name(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isupper(c) || std::isdigit(c) || c == '-';
  });
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

const Var* Ep::arg(const std::string& role) const {
  for (const auto& [r, v] : args)
    if (r == role) return &v;
  return nullptr;
}

Var* Ep::arg(const std::string& role) {
  for (auto& [r, v] : args)
    if (r == role) return &v;
  return nullptr;
}

const Features& Mrs::features_of(int id) const {
  auto it = features.find(id);
  return it == features.end() ? kNoFeatures : it->second;
}

std::optional<std::string> Mrs::feature(int id, const std::string& name) const {
  for (const auto& [n, v] : features_of(id))
    if (n == name) return v;
  return std::nullopt;
}

void Mrs::set_feature(int id, const std::string& name, const std::string& value) {
  auto& list = features[id];
  for (auto& [n, v] : list) {
    if (n == name) {
      v = value;
      return;
    }
  }
  list.emplace_back(name, value);
}

int Mrs::max_id() const {
  int m = 0;
  auto see = [&m](const Var& v) { m = std::max(m, v.id); };
  see(top);
  see(index);
  for (const auto& ep : rels) {
    see(ep.label);
    for (const auto& [role, v] : ep.args) see(v);
  }
  for (const auto& q : hcons) {
    see(q.hi);
    see(q.lo);
  }
  for (const auto& [id, feats] : features) m = std::max(m, id);
  return m;
}

SyntaxError::SyntaxError(std::size_t offset, const std::string& expected,
                         const std::string& got)
    : Error("syntax error at byte " + std::to_string(offset) + ": expected " +
            expected + ", got " + (got.empty() ? "end of input" : "\"" + got + "\"")),
      offset(offset),
      expected(expected) {}

SortError::SortError(std::size_t offset, const std::string& token)
    : Error("bad variable name \"" + token + "\" at byte " +
            std::to_string(offset)),
      offset(offset) {}

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error([&violations] {
        std::string msg = "invalid MRS:";
        for (const auto& v : violations) msg += "\n  - " + v;
        return msg;
      }()),
      violations(std::move(violations)) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  std::string text;
  std::size_t offset = 0;
  bool quoted = false;
};

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  std::optional<Token> lookahead;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  // Reads the next whitespace-delimited token; quoted strings may contain
  // spaces and backslash escapes.
  std::optional<Token> scan() {
    skip_ws();
    if (pos >= text.size()) return std::nullopt;
    Token t;
    t.offset = pos;
    if (text[pos] == '"') {
      t.quoted = true;
      ++pos;
      while (pos < text.size() && text[pos] != '"') {
        if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
        t.text += text[pos++];
      }
      if (pos >= text.size())
        throw SyntaxError(text.size(), "closing '\"'", "");
      ++pos;
    } else {
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])))
        t.text += text[pos++];
    }
    return t;
  }

  const Token* peek() {
    if (!lookahead) lookahead = scan();
    return lookahead ? &*lookahead : nullptr;
  }

  Token next(const std::string& expected) {
    if (!lookahead) lookahead = scan();
    if (!lookahead) throw SyntaxError(text.size(), expected, "");
    Token t = *lookahead;
    lookahead.reset();
    return t;
  }

  void expect(const std::string& literal) {
    Token t = next("'" + literal + "'");
    if (t.quoted || t.text != literal)
      throw SyntaxError(t.offset, "'" + literal + "'", t.text);
  }
};

Var read_var(Cursor& c, Mrs& m, bool allow_props, const char* want_sort) {
  Token t = c.next(want_sort ? std::string(want_sort) + " variable" : "variable");
  if (t.quoted) throw SyntaxError(t.offset, "variable", t.text);
  std::size_t i = 0;
  while (i < t.text.size() && std::islower(static_cast<unsigned char>(t.text[i])))
    ++i;
  std::size_t j = i;
  while (j < t.text.size() && std::isdigit(static_cast<unsigned char>(t.text[j])))
    ++j;
  if (i == 0 || j != t.text.size() || i == t.text.size())
    throw SortError(t.offset, t.text);
  Var v{t.text.substr(0, i), std::stoi(t.text.substr(i))};
  if (!known_sort(v.sort)) throw SortError(t.offset, t.text);
  if (want_sort && v.sort != want_sort)
    throw SyntaxError(t.offset, std::string(want_sort) + " variable", t.text);

  if (allow_props && c.peek() && !c.peek()->quoted && c.peek()->text == "[") {
    c.expect("[");
    Token sort = c.next("variable sort letter");
    if (sort.quoted || sort.text != v.sort)
      throw SyntaxError(sort.offset, "sort letter '" + v.sort + "'", sort.text);
    while (true) {
      Token f = c.next("feature name or ']'");
      if (!f.quoted && f.text == "]") break;
      if (f.quoted || f.text.empty() || f.text.back() != ':')
        throw SyntaxError(f.offset, "feature name ending in ':'", f.text);
      std::string fname = f.text.substr(0, f.text.size() - 1);
      if (!is_feature_name(fname))
        throw SyntaxError(f.offset, "feature name [A-Z][A-Z0-9-]*", f.text);
      Token val = c.next("feature value");
      if (!val.quoted && (val.text == "]" || val.text == "[" ||
                          (!val.text.empty() && val.text.back() == ':')))
        throw SyntaxError(val.offset, "feature value", val.text);
      m.features[v.id].emplace_back(fname, val.text);
    }
  }
  return v;
}

Ep read_ep(Cursor& c, Mrs& m) {
  c.expect("[");
  Ep ep;
  Token pred = c.next("predicate name");
  ep.pred = pred.text;  // quoted predicates are stored unquoted
  c.expect("LBL:");
  ep.label = read_var(c, m, false, "h");
  while (true) {
    Token t = c.next("role name or ']'");
    if (!t.quoted && t.text == "]") break;
    if (t.quoted || t.text.empty() || t.text.back() != ':')
      throw SyntaxError(t.offset, "role name ending in ':'", t.text);
    std::string role = t.text.substr(0, t.text.size() - 1);
    if (!is_feature_name(role))
      throw SyntaxError(t.offset, "role name [A-Z][A-Z0-9-]*", t.text);
    if (role == "CARG") {
      Token carg = c.next("quoted string");
      if (!carg.quoted)
        throw SyntaxError(carg.offset, "quoted string", carg.text);
      ep.carg = carg.text;
    } else {
      ep.args.emplace_back(role, read_var(c, m, true, nullptr));
    }
  }
  return ep;
}

}  // namespace

Mrs parse_simple_mrs(const std::string& text) {
  Cursor c{text};
  Mrs m;
  c.expect("[");
  c.expect("TOP:");
  m.top = read_var(c, m, false, "h");
  c.expect("INDEX:");
  m.index = read_var(c, m, true, nullptr);
  c.expect("RELS:");
  c.expect("<");
  while (c.peek() && !c.peek()->quoted && c.peek()->text == "[")
    m.rels.push_back(read_ep(c, m));
  c.expect(">");
  c.expect("HCONS:");
  c.expect("<");
  while (c.peek() && !(!c.peek()->quoted && c.peek()->text == ">")) {
    Qeq q;
    q.hi = read_var(c, m, false, "h");
    c.expect("qeq");
    q.lo = read_var(c, m, false, "h");
    m.hcons.push_back(q);
  }
  c.expect(">");
  c.expect("]");
  if (c.peek()) {
    const Token* t = c.peek();
    throw SyntaxError(t->offset, "end of input", t->text);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<std::string> validate(const Mrs& m) {
  std::vector<std::string> out;

  if (m.top.sort != "h") out.push_back("TOP " + m.top.name() + " is not a handle");
  if (m.index.sort != "e")
    out.push_back("INDEX " + m.index.name() + " is not an event variable");

  // Sort consistency over every mention.
  std::map<int, std::set<std::string>> sorts;
  auto see = [&sorts](const Var& v) { sorts[v.id].insert(v.sort); };
  see(m.top);
  see(m.index);
  for (const auto& ep : m.rels) {
    see(ep.label);
    for (const auto& [role, v] : ep.args) see(v);
  }
  for (const auto& q : m.hcons) {
    see(q.hi);
    see(q.lo);
  }
  for (const auto& [id, ss] : sorts) {
    if (ss.size() > 1) {
      std::string names;
      for (const auto& s : ss) names += (names.empty() ? "" : ", ") + s + std::to_string(id);
      out.push_back("variable id " + std::to_string(id) +
                    " used with inconsistent sorts: " + names);
    }
  }

  for (const auto& ep : m.rels) {
    if (ep.label.sort != "h")
      out.push_back("EP " + ep.pred + " label " + ep.label.name() + " is not a handle");
    std::set<std::string> roles;
    for (const auto& [role, v] : ep.args) {
      if (!roles.insert(role).second)
        out.push_back("EP " + ep.pred + " repeats role " + role);
    }
  }

  for (const auto& q : m.hcons) {
    if (q.hi.sort != "h" || q.lo.sort != "h")
      out.push_back("qeq " + q.hi.name() + " qeq " + q.lo.name() +
                    " has a non-handle endpoint");
  }

  int top_qeqs = 0;
  for (const auto& q : m.hcons)
    if (q.hi == m.top) ++top_qeqs;
  if (top_qeqs == 0) out.push_back("no qeq constrains the top handle");
  if (top_qeqs > 1) out.push_back("multiple qeqs constrain the top handle");

  // Each quantifier's RSTR must be constrained by exactly one qeq.
  for (const auto& ep : m.rels) {
    if (ep.pred.size() < 2 || ep.pred.substr(ep.pred.size() - 2) != "_q") continue;
    const Var* rstr = ep.arg("RSTR");
    if (!rstr) {
      out.push_back("quantifier " + ep.pred + " has no RSTR");
      continue;
    }
    if (rstr->sort != "h") {
      out.push_back("quantifier " + ep.pred + " RSTR " + rstr->name() +
                    " is not a handle");
      continue;
    }
    int n = 0;
    for (const auto& q : m.hcons)
      if (q.hi == *rstr) ++n;
    if (n != 1)
      out.push_back("quantifier " + ep.pred + " RSTR " + rstr->name() +
                    " is hi of " + std::to_string(n) + " qeqs, expected 1");
  }

  for (const auto& [id, feats] : m.features) {
    std::set<std::string> names;
    for (const auto& [n, v] : feats) {
      if (!names.insert(n).second)
        out.push_back("variable id " + std::to_string(id) + " repeats feature " + n);
      if (!is_feature_name(n))
        out.push_back("feature name \"" + n + "\" on variable id " +
                      std::to_string(id) + " is malformed");
    }
  }

  return out;
}

// ---------------------------------------------------------------------------
// Serialization

std::string serialize_simple_mrs(const Mrs& m) {
  auto violations = validate(m);

  // Features are printable only at INDEX and role-argument mentions.
  std::set<int> printable;
  printable.insert(m.index.id);
  for (const auto& ep : m.rels)
    for (const auto& [role, v] : ep.args) printable.insert(v.id);
  for (const auto& [id, feats] : m.features)
    if (!feats.empty() && !printable.count(id))
      violations.push_back("variable id " + std::to_string(id) +
                           " carries features but has no property-capable mention");
  if (!violations.empty()) throw ValidationError(std::move(violations));

  std::set<int> printed;
  auto props = [&](const Var& v) -> std::string {
    const Features& feats = m.features_of(v.id);
    if (feats.empty() || !printed.insert(v.id).second) return "";
    std::string out = " [ " + v.sort;
    for (const auto& [n, val] : feats) out += " " + n + ": " + val;
    out += " ]";
    return out;
  };

  std::ostringstream out;
  out << "[ TOP: " << m.top.name() << " INDEX: " << m.index.name()
      << props(m.index) << " RELS: <";
  for (const auto& ep : m.rels) {
    out << " [ " << ep.pred << " LBL: " << ep.label.name();
    for (const auto& [role, v] : ep.args)
      out << " " << role << ": " << v.name() << props(v);
    if (ep.carg) out << " CARG: " << quote(*ep.carg);
    out << " ]";
  }
  out << " > HCONS: <";
  for (const auto& q : m.hcons) out << " " << q.hi.name() << " qeq " << q.lo.name();
  out << " > ]";
  return out.str();
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

// Backtracking matcher for the variable-id bijection. State is small enough
// that saving and restoring whole maps is fine.
struct AlphaMatcher {
  const Mrs& a;
  const Mrs& b;
  std::map<int, int> fwd;
  std::map<int, int> rev;

  bool bind(const Var& va, const Var& vb) {
    if (va.sort != vb.sort) return false;
    auto f = fwd.find(va.id);
    auto r = rev.find(vb.id);
    if (f != fwd.end() || r != rev.end())
      return f != fwd.end() && r != rev.end() && f->second == vb.id &&
             r->second == va.id;
    if (a.features_of(va.id) != b.features_of(vb.id)) return false;
    fwd[va.id] = vb.id;
    rev[vb.id] = va.id;
    return true;
  }

  bool bind_ep(const Ep& ea, const Ep& eb) {
    if (ea.pred != eb.pred || ea.carg != eb.carg) return false;
    if (ea.args.size() != eb.args.size()) return false;
    for (std::size_t i = 0; i < ea.args.size(); ++i)
      if (ea.args[i].first != eb.args[i].first) return false;
    if (!bind(ea.label, eb.label)) return false;
    for (std::size_t i = 0; i < ea.args.size(); ++i)
      if (!bind(ea.args[i].second, eb.args[i].second)) return false;
    return true;
  }

  bool match_rels(std::size_t i, std::vector<bool>& used) {
    if (i == a.rels.size()) {
      std::vector<bool> qused(b.hcons.size(), false);
      return match_hcons(0, qused);
    }
    for (std::size_t j = 0; j < b.rels.size(); ++j) {
      if (used[j]) continue;
      auto saved_fwd = fwd;
      auto saved_rev = rev;
      if (bind_ep(a.rels[i], b.rels[j])) {
        used[j] = true;
        if (match_rels(i + 1, used)) return true;
        used[j] = false;
      }
      fwd = std::move(saved_fwd);
      rev = std::move(saved_rev);
    }
    return false;
  }

  bool match_hcons(std::size_t i, std::vector<bool>& used) {
    if (i == a.hcons.size()) return true;
    for (std::size_t j = 0; j < b.hcons.size(); ++j) {
      if (used[j]) continue;
      auto saved_fwd = fwd;
      auto saved_rev = rev;
      if (bind(a.hcons[i].hi, b.hcons[j].hi) &&
          bind(a.hcons[i].lo, b.hcons[j].lo)) {
        used[j] = true;
        if (match_hcons(i + 1, used)) return true;
        used[j] = false;
      }
      fwd = std::move(saved_fwd);
      rev = std::move(saved_rev);
    }
    return false;
  }
};

}  // namespace

bool alpha_equal(const Mrs& a, const Mrs& b) {
  if (a.rels.size() != b.rels.size() || a.hcons.size() != b.hcons.size())
    return false;
  AlphaMatcher matcher{a, b, {}, {}};
  if (!matcher.bind(a.top, b.top)) return false;
  if (!matcher.bind(a.index, b.index)) return false;
  std::vector<bool> used(b.rels.size(), false);
  return matcher.match_rels(0, used);
}

Var fresh_variable(const Mrs& m, const std::string& sort) {
  if (!known_sort(sort)) throw Error("unknown variable sort \"" + sort + "\"");
  return Var{sort, m.max_id() + 1};
}

const Ep& main_verb(const Mrs& m) {
  const Ep* found = nullptr;
  for (const auto& ep : m.rels) {
    const Var* arg0 = ep.arg("ARG0");
    if (arg0 && *arg0 == m.index) {
      if (found)
        throw NoMainVerbError("multiple EPs carry the index " + m.index.name() +
                              " as ARG0");
      found = &ep;
    }
  }
  if (!found)
    throw NoMainVerbError("no EP carries the index " + m.index.name() +
                          " as ARG0");
  return *found;
}

}  // namespace contrast::mrs
