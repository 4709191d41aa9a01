#ifndef ASPNK_SEMANTICS_HPP
#define ASPNK_SEMANTICS_HPP

#include <memory>
#include <vector>

#include "aspnk/program.hpp"

namespace aspnk {

// Rewrites choice and cardinality rules into basic rules and constraints:
// a choice head h becomes h <- body, not not h plus bound constraints, and
// cardinality expressions become their subset constraint sets. Throws
// CapExceededError when a subset expansion would exceed max_subset_size
// literals per expression.
Program expand(const Program& program, int max_subset_size = 12);

// The reduct of a program containing only basic rules and constraints
// (expand first). Every negated subformula is replaced by its truth value
// under x; satisfied rules keep their positive body, refuted rules are
// dropped.
Program reduct(const Program& program, const Interpretation& x);

struct LeastModelResult {
  Interpretation model;
  bool constraint_violated = false;
  int rounds = 0;  // fixpoint iterations, <= atom_count + 1
};

// Least model of a negation-free program (positive basic rules, positive
// cardinality rules, constraints). Constraints are verified against the
// fixpoint and reported via constraint_violated.
LeastModelResult least_model(const Program& positive);

// Reusable oracle over a pre-expanded program. Cardinality expressions
// with more than 12 literals are evaluated by counting instead of subset
// expansion; both routes implement the same satisfaction relation.
class SemanticsOracle {
 public:
  explicit SemanticsOracle(const Program& program);
  ~SemanticsOracle();
  SemanticsOracle(SemanticsOracle&&) noexcept;
  SemanticsOracle& operator=(SemanticsOracle&&) noexcept;

  // Least model of the program's reduct w.r.t. x (constraints ignored).
  Interpretation reduct_least_model(const Interpretation& x) const;
  bool constraints_satisfied(const Interpretation& x) const;
  bool is_answer_set(const Interpretation& x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

bool is_answer_set(const Program& program, const Interpretation& x);

// Exhaustive subset enumeration; the verification oracle. Throws
// CapExceededError when the program has more than atom_cap atoms.
std::vector<Interpretation> enumerate_bruteforce(const Program& program, int atom_cap = 20);

}  // namespace aspnk

#endif  // ASPNK_SEMANTICS_HPP
