#ifndef CONTRAST_MRS_HPP
#define CONTRAST_MRS_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "contrast/error.hpp"

namespace contrast::mrs {

// A variable mention: sort letter(s) plus a numeric id, e.g. h0, e2, x3.
// Recognized sorts are e (event), x (instance), h (handle), i, u.
struct Var {
  std::string sort;
  int id = 0;

  std::string name() const { return sort + std::to_string(id); }
  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

// Ordered feature list of one variable, e.g. SF:prop TENSE:past.
using Features = std::vector<std::pair<std::string, std::string>>;

// One elementary predicate: predicate name, label handle, role arguments
// in surface order, optional CARG string constant.
struct Ep {
  std::string pred;
  Var label;
  std::vector<std::pair<std::string, Var>> args;
  std::optional<std::string> carg;

  const Var* arg(const std::string& role) const;
  Var* arg(const std::string& role);
  friend bool operator==(const Ep&, const Ep&) = default;
};

struct Qeq {
  Var hi;
  Var lo;
  friend bool operator==(const Qeq&, const Qeq&) = default;
};

// A semantic representation: top handle, index event, bag of EPs kept in
// input order, handle constraints. Variable features are stored once per
// id; mentions carry only sort+id. Values are immutable by convention --
// rewrites copy.
struct Mrs {
  Var top;
  Var index;
  std::vector<Ep> rels;
  std::vector<Qeq> hcons;
  std::map<int, Features> features;

  const Features& features_of(int id) const;
  std::optional<std::string> feature(int id, const std::string& name) const;
  // Replaces the value in place when the feature exists, appends otherwise.
  void set_feature(int id, const std::string& name, const std::string& value);
  int max_id() const;

  friend bool operator==(const Mrs&, const Mrs&) = default;
};

struct SyntaxError : Error {
  std::size_t offset;
  std::string expected;
  SyntaxError(std::size_t offset, const std::string& expected,
              const std::string& got);
};

struct SortError : Error {
  std::size_t offset;
  SortError(std::size_t offset, const std::string& token);
};

struct ValidationError : Error {
  std::vector<std::string> violations;
  explicit ValidationError(std::vector<std::string> violations);
};

struct NoMainVerbError : Error {
  using Error::Error;
};

// Parses one simple-MRS expression. Tokens are whitespace separated;
// elisions ("...") are not accepted. Structure is preserved exactly:
// EP order, role order and feature order all survive a round trip.
Mrs parse_simple_mrs(const std::string& text);

// Returns one message per violated invariant; empty means well formed.
std::vector<std::string> validate(const Mrs& m);

// Canonical one-line form, single spaces, properties at the first
// property-capable mention. Throws ValidationError on an invalid Mrs.
std::string serialize_simple_mrs(const Mrs& m);

// True iff some sort-preserving bijection on variable ids makes the two
// values identical up to EP-bag order and hcons order. Feature lists must
// match exactly.
bool alpha_equal(const Mrs& a, const Mrs& b);

// Next unused variable: id is 1 + the maximum id over all sorts jointly.
Var fresh_variable(const Mrs& m, const std::string& sort);

// The unique EP whose ARG0 is the sentential index.
const Ep& main_verb(const Mrs& m);

}  // namespace contrast::mrs

#endif
