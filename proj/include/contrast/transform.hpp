#ifndef CONTRAST_TRANSFORM_HPP
#define CONTRAST_TRANSFORM_HPP

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "contrast/mrs.hpp"

namespace contrast::transform {

// Phenomenon tokens. The closed token set is
//   o pr p f m neg i i1 i2 pa sw
// plus pq, which is reserved but has no rewrite. The generic token i means
// "it-cleft, prefer ARG1, fall back to ARG2" and is resolved when applied.
enum class Kind {
  Original,      // o
  Present,       // pr
  Past,          // p
  Future,        // f
  ModalMay,      // m
  Negation,      // neg
  ItCleft,       // i
  ItCleftArg1,   // i1
  ItCleftArg2,   // i2
  Passive,       // pa
  Swap,          // sw
  PolarQuestion  // pq (reserved, rewrite unimplemented)
};

std::string token(Kind k);
std::optional<Kind> kind_from_token(std::string_view token);

enum class Tense { Pres, Past, Fut };
enum class CleftArg { Arg1, Arg2 };

// Constraints enforced at surface selection rather than by editing the Mrs.
enum class Constraint { PassiveRequired };

struct RewriteResult {
  mrs::Mrs mrs;
  std::set<Constraint> constraints;
  std::vector<Kind> applied;
};

struct RoleUnavailableError : Error {
  std::string role;
  explicit RoleUnavailableError(const std::string& role, const std::string& why);
};

struct NotTensedError : Error {
  using Error::Error;
};

struct UnimplementedTransformError : Error {
  using Error::Error;
};

// Raised by compose: the first rule failure, annotated with the transform
// token that failed.
struct RuleError : Error {
  Kind failing;
  RuleError(Kind failing, const std::string& why);
};

// Each rewrite takes a valid Mrs by const reference and returns an edited
// copy; inputs are never mutated.

// Replaces TENSE on the main verb's event variable.
mrs::Mrs apply_tense(const mrs::Mrs& m, Tense tense);

// Inserts _be_v_itcleft focusing the requested argument of the main verb,
// retargets the top qeq to the new EP and moves the index to its event.
mrs::Mrs apply_itcleft(const mrs::Mrs& m, CleftArg which);

// Inserts _may_v_modal scoping over the main verb's label.
mrs::Mrs apply_modality_may(const mrs::Mrs& m);

// Inserts neg scoping over the main verb's label; the index is unchanged.
mrs::Mrs apply_negation(const mrs::Mrs& m);

// Exchanges ARG1 and ARG2 on the main verb EP only.
mrs::Mrs apply_swap(const mrs::Mrs& m);

// Marks the result as requiring a passive surface; the Mrs is unchanged
// because active and passive share a representation in the grammar.
RewriteResult require_passive(RewriteResult r);

// Applies the stack under the canonical order sw, neg, tense, m, i with
// realization constraints attached last. `o` composes as identity.
RewriteResult compose(const mrs::Mrs& m, const std::vector<Kind>& transforms);

}  // namespace contrast::transform

#endif
