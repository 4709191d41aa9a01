#ifndef ASPNK_PROGRAM_HPP
#define ASPNK_PROGRAM_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace aspnk {

using AtomId = std::int32_t;

// Atom id 0 is the always-false atom; symbolic atoms start at 1.
inline constexpr AtomId kFalseAtom = 0;

enum class Polarity : std::uint8_t {
  kPositive,
  kNegative,        // not A
  kDoubleNegative,  // not not A (bodies only; produced by choice expansion)
};

struct Literal {
  AtomId atom = kFalseAtom;
  Polarity polarity = Polarity::kPositive;

  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(AtomId a) { return {a, Polarity::kPositive}; }
inline Literal neg(AtomId a) { return {a, Polarity::kNegative}; }
inline Literal dneg(AtomId a) { return {a, Polarity::kDoubleNegative}; }

enum class RuleKind : std::uint8_t {
  kBasic,        // h <- body
  kConstraint,   // <- body
  kChoice,       // l {h1; ...; hn} u <- body
  kCardinality,  // h <- lower { lits }   (h may be kFalseAtom)
};

struct ChoiceBounds {
  int lower = 0;
  int upper = 0;
  friend auto operator<=>(const ChoiceBounds&, const ChoiceBounds&) = default;
};

struct Rule {
  RuleKind kind = RuleKind::kBasic;
  std::vector<AtomId> heads;          // basic: 1; constraint: 0; choice: >=1; cardinality: 1
  std::vector<Literal> body;          // normal body literals (unused for kCardinality)
  std::optional<ChoiceBounds> bounds; // kChoice only; absent means 0..|heads|
  int card_lower = 0;                 // kCardinality only
  std::vector<Literal> card_literals; // kCardinality only
};

Rule basic_rule(AtomId head, std::vector<Literal> body = {});
Rule constraint(std::vector<Literal> body);
Rule choice_rule(std::vector<AtomId> heads, std::vector<Literal> body = {},
                 std::optional<ChoiceBounds> bounds = std::nullopt);
Rule cardinality_rule(AtomId head, int lower, std::vector<Literal> lits);

// A set of atoms assumed true. Atoms are kept sorted and unique.
struct Interpretation {
  std::vector<AtomId> atoms;

  Interpretation() = default;
  explicit Interpretation(std::vector<AtomId> a) : atoms(std::move(a)) { normalize(); }

  void normalize() {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  }
  bool contains(AtomId a) const {
    return std::binary_search(atoms.begin(), atoms.end(), a);
  }
  std::size_t size() const { return atoms.size(); }
  bool empty() const { return atoms.empty(); }

  friend auto operator<=>(const Interpretation&, const Interpretation&) = default;
};

// The projection of an interpretation onto the distinguished atoms.
struct Solution {
  std::vector<AtomId> atoms;  // sorted, all distinguished
  Interpretation origin;

  bool contains(AtomId a) const {
    return std::binary_search(atoms.begin(), atoms.end(), a);
  }
  friend bool operator==(const Solution& a, const Solution& b) { return a.atoms == b.atoms; }
  friend auto operator<=>(const Solution& a, const Solution& b) { return a.atoms <=> b.atoms; }
};

// Ground program over interned atoms. Immutable once built; all query
// methods are const and safe to share across threads.
class Program {
 public:
  Program() : names_(1) {}  // slot for the false atom

  AtomId add_atom(const std::string& name);
  AtomId add_atom();  // anonymous
  AtomId intern(const std::string& name);
  std::optional<AtomId> find_atom(std::string_view name) const;

  // Number of real atoms; ids run 1..atom_count().
  int atom_count() const { return static_cast<int>(names_.size()) - 1; }
  bool valid_atom(AtomId a) const { return a >= 0 && a < static_cast<AtomId>(names_.size()); }
  const std::optional<std::string>& atom_name(AtomId a) const { return names_[a]; }
  // Name if present, else a stable placeholder.
  std::string atom_display(AtomId a) const;

  void add_rule(Rule r);
  const std::vector<Rule>& rules() const { return rules_; }

  // Distinguished atoms define the solution projection. Predicates are
  // matched by name prefix ("edge" matches edge(3,1)); "edge/2" pins arity.
  void declare_distinguished_predicates(const std::vector<std::string>& preds);
  void declare_distinguished_atoms(std::vector<AtomId> atoms);
  bool has_distinguished_declaration() const { return distinguished_.has_value(); }
  // Sorted. Defaults to all named atoms when nothing was declared.
  std::vector<AtomId> distinguished() const;
  bool is_distinguished(AtomId a) const;

  Solution project(const Interpretation& x) const;

  // Splits every bounded choice into an unbounded choice plus cardinality
  // constraints (the form the smodels format can carry).
  Program lower_choice_bounds() const;

  static std::string predicate_of(std::string_view atom_name);

 private:
  std::vector<std::optional<std::string>> names_;
  std::unordered_map<std::string, AtomId> by_name_;
  std::vector<Rule> rules_;
  std::optional<std::vector<AtomId>> distinguished_;  // sorted when set
};

// Project an interpretation onto the program's distinguished atoms.
Solution project(const Interpretation& x, const Program& program);

}  // namespace aspnk

#endif  // ASPNK_PROGRAM_HPP
