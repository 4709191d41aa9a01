#include "aspnk/semantics.hpp"

#include <cstdint>
#include <functional>

#include "aspnk/errors.hpp"

namespace aspnk {

namespace {

bool literal_holds(const Literal& l, const std::vector<char>& truth) {
  switch (l.polarity) {
    case Polarity::kPositive: return truth[l.atom];
    case Polarity::kNegative: return !truth[l.atom];
    case Polarity::kDoubleNegative: return truth[l.atom];
  }
  return false;
}

std::vector<char> truth_vector(const Program& p, const Interpretation& x) {
  std::vector<char> truth(p.atom_count() + 1, 0);
  for (AtomId a : x.atoms) {
    if (a > 0 && a <= p.atom_count()) truth[a] = 1;
  }
  return truth;
}

void for_each_subset(const std::vector<Literal>& lits, int k,
                     const std::function<void(std::vector<Literal>&)>& emit) {
  const int m = static_cast<int>(lits.size());
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  std::vector<Literal> subset(k);
  if (k == 0) {
    emit(subset);
    return;
  }
  for (;;) {
    for (int i = 0; i < k; ++i) subset[i] = lits[idx[i]];
    emit(subset);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Checked binomial; subset expansions are guarded by max_subset_size but a
// wide expression with a mid-range bound would still blow up.
std::int64_t binom(int m, int k) {
  if (k < 0 || k > m) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (m - k + i) / i;
    if (r > (std::int64_t{1} << 40)) return -1;
  }
  return r;
}

}  // namespace

Program expand(const Program& program, int max_subset_size) {
  // Rebuild the rule list from scratch on a copy of the atom table.
  Program fresh;
  {
    // Copy atoms 1..N preserving ids and names.
    for (AtomId a = 1; a <= program.atom_count(); ++a) {
      if (program.atom_name(a)) {
        fresh.add_atom(*program.atom_name(a));
      } else {
        fresh.add_atom();
      }
    }
  }
  auto expand_card = [&](AtomId head, int lower, const std::vector<Literal>& lits) {
    const int m = static_cast<int>(lits.size());
    if (m > max_subset_size) {
      throw CapExceededError("cardinality expression with " + std::to_string(m) +
                             " literals exceeds the subset-expansion cap of " +
                             std::to_string(max_subset_size));
    }
    if (lower > m) return;  // never satisfiable, no rule fires
    for_each_subset(lits, lower, [&](std::vector<Literal>& subset) {
      if (head == kFalseAtom) {
        fresh.add_rule(constraint(subset));
      } else {
        fresh.add_rule(basic_rule(head, subset));
      }
    });
  };
  for (const Rule& r : program.rules()) {
    switch (r.kind) {
      case RuleKind::kBasic:
      case RuleKind::kConstraint:
        fresh.add_rule(r);
        break;
      case RuleKind::kChoice: {
        for (AtomId h : r.heads) {
          std::vector<Literal> body = r.body;
          body.push_back(dneg(h));
          fresh.add_rule(basic_rule(h, std::move(body)));
        }
        if (r.bounds) {
          const int m = static_cast<int>(r.heads.size());
          std::vector<Literal> heads_pos, heads_neg;
          for (AtomId h : r.heads) {
            heads_pos.push_back(pos(h));
            heads_neg.push_back(neg(h));
          }
          // <- not (l <= {H}): violated when at least m-l+1 heads are false.
          if (r.bounds->lower > 0) {
            expand_card(kFalseAtom, m - r.bounds->lower + 1, heads_neg);
          }
          if (r.bounds->upper < m) {
            expand_card(kFalseAtom, r.bounds->upper + 1, heads_pos);
          }
        }
        break;
      }
      case RuleKind::kCardinality:
        expand_card(r.heads[0], r.card_lower, r.card_literals);
        break;
    }
  }
  return fresh;
}

Program reduct(const Program& program, const Interpretation& x) {
  for (const Rule& r : program.rules()) {
    if (r.kind != RuleKind::kBasic && r.kind != RuleKind::kConstraint) {
      throw Error("reduct expects an expanded program (basic rules and constraints only)");
    }
  }
  std::vector<char> truth = truth_vector(program, x);
  Program fresh;
  for (AtomId a = 1; a <= program.atom_count(); ++a) {
    if (program.atom_name(a)) {
      fresh.add_atom(*program.atom_name(a));
    } else {
      fresh.add_atom();
    }
  }
  for (const Rule& r : program.rules()) {
    std::vector<Literal> body;
    bool dead = false;
    for (const Literal& l : r.body) {
      if (l.polarity == Polarity::kPositive) {
        body.push_back(l);
      } else if (!literal_holds(l, truth)) {
        dead = true;  // not F evaluates to bottom
        break;
      }
      // satisfied negated subformulas become top and vanish
    }
    if (dead) continue;
    if (r.kind == RuleKind::kBasic) {
      fresh.add_rule(basic_rule(r.heads[0], std::move(body)));
    } else {
      fresh.add_rule(constraint(std::move(body)));
    }
  }
  return fresh;
}

LeastModelResult least_model(const Program& positive) {
  for (const Rule& r : positive.rules()) {
    const std::vector<Literal>* lits = nullptr;
    switch (r.kind) {
      case RuleKind::kBasic:
      case RuleKind::kConstraint: lits = &r.body; break;
      case RuleKind::kCardinality: lits = &r.card_literals; break;
      case RuleKind::kChoice:
        throw Error("least_model expects a negation-free program without choice rules");
    }
    for (const Literal& l : *lits) {
      if (l.polarity != Polarity::kPositive) {
        throw Error("least_model expects a negation-free program");
      }
    }
  }
  std::vector<char> derived(positive.atom_count() + 1, 0);
  int rounds = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    ++rounds;
    for (const Rule& r : positive.rules()) {
      if (r.kind == RuleKind::kConstraint) continue;
      AtomId head = r.heads[0];
      if (head != kFalseAtom && derived[head]) continue;
      bool fires;
      if (r.kind == RuleKind::kBasic) {
        fires = true;
        for (const Literal& l : r.body) {
          if (!derived[l.atom]) {
            fires = false;
            break;
          }
        }
      } else {
        int count = 0;
        for (const Literal& l : r.card_literals) count += derived[l.atom];
        fires = count >= r.card_lower;
      }
      if (fires && head != kFalseAtom && !derived[head]) {
        derived[head] = 1;
        changed = true;
      }
    }
  }
  LeastModelResult res;
  for (AtomId a = 1; a <= positive.atom_count(); ++a) {
    if (derived[a]) res.model.atoms.push_back(a);
  }
  res.rounds = rounds;
  for (const Rule& r : positive.rules()) {
    bool body_holds;
    if (r.kind == RuleKind::kCardinality) {
      int count = 0;
      for (const Literal& l : r.card_literals) count += derived[l.atom];
      body_holds = count >= r.card_lower;
    } else {
      body_holds = true;
      for (const Literal& l : r.body) {
        if (!derived[l.atom]) {
          body_holds = false;
          break;
        }
      }
    }
    const bool is_violation =
        (r.kind == RuleKind::kConstraint || (r.kind == RuleKind::kCardinality && r.heads[0] == kFalseAtom));
    if (is_violation && body_holds) res.constraint_violated = true;
  }
  return res;
}

// ---------------------------------------------------------------------------
// SemanticsOracle: pre-expanded form with count-based cardinalities
// ---------------------------------------------------------------------------

namespace {

struct XCard {
  int lower = 0;
  bool negated = false;  // not (lower <= lits)
  std::vector<Literal> lits;
};

struct XRule {
  AtomId head = kFalseAtom;
  std::vector<Literal> lits;
  std::vector<XCard> cards;
};

constexpr int kOracleSubsetCap = 12;

}  // namespace

struct SemanticsOracle::Impl {
  int atom_count = 0;
  std::vector<XRule> rules;

  explicit Impl(const Program& program) : atom_count(program.atom_count()) {
    for (const Rule& r : program.rules()) {
      switch (r.kind) {
        case RuleKind::kBasic:
          rules.push_back({r.heads[0], r.body, {}});
          break;
        case RuleKind::kConstraint:
          rules.push_back({kFalseAtom, r.body, {}});
          break;
        case RuleKind::kChoice: {
          for (AtomId h : r.heads) {
            XRule xr{h, r.body, {}};
            xr.lits.push_back(dneg(h));
            rules.push_back(std::move(xr));
          }
          if (r.bounds) {
            const int m = static_cast<int>(r.heads.size());
            std::vector<Literal> heads_pos;
            for (AtomId h : r.heads) heads_pos.push_back(pos(h));
            if (r.bounds->lower > 0) {
              XRule xr{kFalseAtom, {}, {XCard{r.bounds->lower, true, heads_pos}}};
              rules.push_back(std::move(xr));
            }
            if (r.bounds->upper < m) {
              XRule xr{kFalseAtom, {}, {XCard{r.bounds->upper + 1, false, heads_pos}}};
              rules.push_back(std::move(xr));
            }
          }
          break;
        }
        case RuleKind::kCardinality: {
          const int m = static_cast<int>(r.card_literals.size());
          if (m <= kOracleSubsetCap && binom(m, r.card_lower) >= 0) {
            if (r.card_lower <= m) {
              for_each_subset(r.card_literals, r.card_lower, [&](std::vector<Literal>& subset) {
                rules.push_back({r.heads[0], subset, {}});
              });
            }
          } else {
            rules.push_back({r.heads[0], {}, {XCard{r.card_lower, false, r.card_literals}}});
          }
          break;
        }
      }
    }
  }

  // Least model of the reduct w.r.t. truth; constraints ignored here.
  std::vector<char> lm(const std::vector<char>& truth) const {
    std::vector<char> derived(atom_count + 1, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const XRule& r : rules) {
        if (r.head == kFalseAtom || derived[r.head]) continue;
        if (rule_fires_in_reduct(r, truth, derived)) {
          derived[r.head] = 1;
          changed = true;
        }
      }
    }
    return derived;
  }

  // Body of the reduct of r, evaluated on `derived`, with negated
  // subformulas fixed by `truth`.
  static bool rule_fires_in_reduct(const XRule& r, const std::vector<char>& truth,
                                   const std::vector<char>& derived) {
    for (const Literal& l : r.lits) {
      switch (l.polarity) {
        case Polarity::kPositive:
          if (!derived[l.atom]) return false;
          break;
        case Polarity::kNegative:
          if (truth[l.atom]) return false;
          break;
        case Polarity::kDoubleNegative:
          if (!truth[l.atom]) return false;
          break;
      }
    }
    for (const XCard& c : r.cards) {
      if (c.negated) {
        // not (lower <= lits): a negated subformula, evaluated under truth.
        int count = 0;
        for (const Literal& l : c.lits) count += literal_holds(l, truth);
        if (count >= c.lower) return false;
      } else {
        int count = 0;
        for (const Literal& l : c.lits) {
          switch (l.polarity) {
            case Polarity::kPositive: count += derived[l.atom]; break;
            case Polarity::kNegative: count += !truth[l.atom]; break;
            case Polarity::kDoubleNegative: count += truth[l.atom]; break;
          }
        }
        if (count < c.lower) return false;
      }
    }
    return true;
  }

  bool satisfied_by(const XRule& r, const std::vector<char>& truth) const {
    for (const Literal& l : r.lits) {
      if (!literal_holds(l, truth)) return false;
    }
    for (const XCard& c : r.cards) {
      int count = 0;
      for (const Literal& l : c.lits) count += literal_holds(l, truth);
      bool sat = count >= c.lower;
      if (c.negated) sat = !sat;
      if (!sat) return false;
    }
    return true;
  }
};

SemanticsOracle::SemanticsOracle(const Program& program)
    : impl_(std::make_unique<Impl>(program)) {}
SemanticsOracle::~SemanticsOracle() = default;
SemanticsOracle::SemanticsOracle(SemanticsOracle&&) noexcept = default;
SemanticsOracle& SemanticsOracle::operator=(SemanticsOracle&&) noexcept = default;

Interpretation SemanticsOracle::reduct_least_model(const Interpretation& x) const {
  std::vector<char> truth(impl_->atom_count + 1, 0);
  for (AtomId a : x.atoms) {
    if (a > 0 && a <= impl_->atom_count) truth[a] = 1;
  }
  std::vector<char> derived = impl_->lm(truth);
  Interpretation out;
  for (AtomId a = 1; a <= impl_->atom_count; ++a) {
    if (derived[a]) out.atoms.push_back(a);
  }
  return out;
}

bool SemanticsOracle::constraints_satisfied(const Interpretation& x) const {
  std::vector<char> truth(impl_->atom_count + 1, 0);
  for (AtomId a : x.atoms) {
    if (a > 0 && a <= impl_->atom_count) truth[a] = 1;
  }
  for (const XRule& r : impl_->rules) {
    if (r.head == kFalseAtom && impl_->satisfied_by(r, truth)) return false;
  }
  return true;
}

bool SemanticsOracle::is_answer_set(const Interpretation& x) const {
  return constraints_satisfied(x) && reduct_least_model(x) == x;
}

bool is_answer_set(const Program& program, const Interpretation& x) {
  return SemanticsOracle(program).is_answer_set(x);
}

std::vector<Interpretation> enumerate_bruteforce(const Program& program, int atom_cap) {
  const int n = program.atom_count();
  if (n > atom_cap) {
    throw CapExceededError("program has " + std::to_string(n) +
                           " atoms, above the brute-force cap of " + std::to_string(atom_cap));
  }
  SemanticsOracle oracle(program);
  std::vector<Interpretation> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Interpretation x;
    for (int a = 1; a <= n; ++a) {
      if (mask & (std::uint64_t{1} << (a - 1))) x.atoms.push_back(a);
    }
    if (oracle.is_answer_set(x)) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace aspnk
