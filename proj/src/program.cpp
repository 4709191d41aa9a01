#include "aspnk/program.hpp"

#include <stdexcept>

#include "aspnk/errors.hpp"

namespace aspnk {

Rule basic_rule(AtomId head, std::vector<Literal> body) {
  Rule r;
  r.kind = RuleKind::kBasic;
  r.heads = {head};
  r.body = std::move(body);
  return r;
}

Rule constraint(std::vector<Literal> body) {
  Rule r;
  r.kind = RuleKind::kConstraint;
  r.body = std::move(body);
  return r;
}

Rule choice_rule(std::vector<AtomId> heads, std::vector<Literal> body,
                 std::optional<ChoiceBounds> bounds) {
  Rule r;
  r.kind = RuleKind::kChoice;
  r.heads = std::move(heads);
  r.body = std::move(body);
  r.bounds = bounds;
  return r;
}

Rule cardinality_rule(AtomId head, int lower, std::vector<Literal> lits) {
  Rule r;
  r.kind = RuleKind::kCardinality;
  r.heads = {head};
  r.card_lower = lower;
  r.card_literals = std::move(lits);
  return r;
}

AtomId Program::add_atom(const std::string& name) {
  if (by_name_.contains(name)) {
    throw Error("duplicate atom name: " + name);
  }
  AtomId id = static_cast<AtomId>(names_.size());
  names_.emplace_back(name);
  by_name_.emplace(name, id);
  return id;
}

AtomId Program::add_atom() {
  AtomId id = static_cast<AtomId>(names_.size());
  names_.emplace_back(std::nullopt);
  return id;
}

AtomId Program::intern(const std::string& name) {
  auto it = by_name_.find(name);
  if (it != by_name_.end()) return it->second;
  return add_atom(name);
}

std::optional<AtomId> Program::find_atom(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::string Program::atom_display(AtomId a) const {
  if (a == kFalseAtom) return "_false";
  if (names_[a]) return *names_[a];
  return "_x" + std::to_string(a);
}

void Program::add_rule(Rule r) {
  auto check = [&](AtomId a) {
    if (!valid_atom(a)) throw Error("rule references unknown atom id " + std::to_string(a));
  };
  for (AtomId h : r.heads) check(h);
  for (const Literal& l : r.body) check(l.atom);
  for (const Literal& l : r.card_literals) check(l.atom);
  switch (r.kind) {
    case RuleKind::kBasic:
      if (r.heads.size() != 1) throw Error("basic rule needs exactly one head");
      break;
    case RuleKind::kConstraint:
      if (!r.heads.empty()) throw Error("constraint must have an empty head");
      break;
    case RuleKind::kChoice: {
      if (r.heads.empty()) throw Error("choice rule needs at least one head");
      if (r.bounds) {
        const int m = static_cast<int>(r.heads.size());
        if (r.bounds->lower < 0 || r.bounds->lower > r.bounds->upper || r.bounds->upper > m) {
          throw Error("choice bounds must satisfy 0 <= lower <= upper <= |head|");
        }
      }
      break;
    }
    case RuleKind::kCardinality:
      if (r.heads.size() != 1) throw Error("cardinality rule needs exactly one head");
      if (r.card_lower < 0) throw Error("cardinality bound must be nonnegative");
      break;
  }
  rules_.push_back(std::move(r));
}

std::string Program::predicate_of(std::string_view atom_name) {
  auto paren = atom_name.find('(');
  return std::string(atom_name.substr(0, paren));
}

namespace {
int arity_of(std::string_view atom_name) {
  auto paren = atom_name.find('(');
  if (paren == std::string_view::npos) return 0;
  int depth = 0;
  int args = 1;
  for (std::size_t i = paren; i < atom_name.size(); ++i) {
    char c = atom_name[i];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == ',' && depth == 1) ++args;
  }
  return args;
}
}  // namespace

void Program::declare_distinguished_predicates(const std::vector<std::string>& preds) {
  std::vector<AtomId> atoms;
  for (AtomId a = 1; a < static_cast<AtomId>(names_.size()); ++a) {
    if (!names_[a]) continue;
    const std::string& name = *names_[a];
    for (const std::string& p : preds) {
      auto slash = p.find('/');
      std::string pred = p.substr(0, slash);
      if (predicate_of(name) != pred) continue;
      if (slash != std::string::npos &&
          arity_of(name) != std::stoi(p.substr(slash + 1))) {
        continue;
      }
      atoms.push_back(a);
      break;
    }
  }
  declare_distinguished_atoms(std::move(atoms));
}

void Program::declare_distinguished_atoms(std::vector<AtomId> atoms) {
  for (AtomId a : atoms) {
    if (!valid_atom(a) || a == kFalseAtom) {
      throw Error("distinguished atom id out of range: " + std::to_string(a));
    }
  }
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  distinguished_ = std::move(atoms);
}

std::vector<AtomId> Program::distinguished() const {
  if (distinguished_) return *distinguished_;
  std::vector<AtomId> atoms;
  for (AtomId a = 1; a < static_cast<AtomId>(names_.size()); ++a) {
    if (names_[a]) atoms.push_back(a);
  }
  return atoms;
}

bool Program::is_distinguished(AtomId a) const {
  if (a == kFalseAtom || !valid_atom(a)) return false;
  if (distinguished_) {
    return std::binary_search(distinguished_->begin(), distinguished_->end(), a);
  }
  return names_[a].has_value();
}

Solution Program::project(const Interpretation& x) const {
  Solution s;
  s.origin = x;
  for (AtomId a : x.atoms) {
    if (is_distinguished(a)) s.atoms.push_back(a);
  }
  return s;
}

Solution project(const Interpretation& x, const Program& program) {
  return program.project(x);
}

Program Program::lower_choice_bounds() const {
  Program out = *this;
  std::vector<Rule> rules;
  rules.reserve(rules_.size());
  for (const Rule& r : rules_) {
    if (r.kind != RuleKind::kChoice || !r.bounds) {
      rules.push_back(r);
      continue;
    }
    const int m = static_cast<int>(r.heads.size());
    const auto [lower, upper] = *r.bounds;
    Rule plain = r;
    plain.bounds.reset();
    rules.push_back(std::move(plain));
    std::vector<Literal> heads_pos, heads_neg;
    for (AtomId h : r.heads) {
      heads_pos.push_back(pos(h));
      heads_neg.push_back(neg(h));
    }
    // <- not (lower <= {H})  ==  <- (m - lower + 1) {not h1; ...; not hm}
    if (lower > 0) {
      rules.push_back(cardinality_rule(kFalseAtom, m - lower + 1, heads_neg));
    }
    // <- not ({H} <= upper)  ==  <- (upper + 1) {h1; ...; hm}
    if (upper < m) {
      rules.push_back(cardinality_rule(kFalseAtom, upper + 1, heads_pos));
    }
  }
  out.rules_ = std::move(rules);
  return out;
}

}  // namespace aspnk
