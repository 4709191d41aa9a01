#ifndef ASPNK_PARSE_HPP
#define ASPNK_PARSE_HPP

#include <string>
#include <string_view>

#include "aspnk/program.hpp"

namespace aspnk {

enum class Format { kSmodels, kDsl };

// Parses ground program text.
//
// smodels: the numeric format emitted by lparse/gringo. Rule types 1
// (basic), 2 (cardinality constraint) and 3 (choice) are accepted; types
// 5/6/8 raise UnsupportedRuleError. Atoms in the B-/B+ compute sections
// become constraints; an unnamed B- atom that never occurs in a body is
// the falsity marker used as constraint head.
//
// dsl: one rule per '.', '%' comments. Forms:
//   a :- b, not c, not not d.
//   :- body.
//   l {a; b; c} u :- body.        (bounds and body optional)
//   h :- l {a; not b; c}.         (cardinality body; h optional)
Program parse(std::string_view text, Format format);

// Inverse of parse up to atom renumbering. Bounded choice rules are
// lowered for smodels (the numeric format has no choice bounds); the DSL
// keeps them. Unreferenced atom-table entries do not survive the DSL.
std::string serialize(const Program& program, Format format);

// Rule-level isomorphism: atoms are matched by name, rules compared as
// multisets with bodies in canonical order. Unreferenced unnamed atoms are
// ignored. Distinguished declarations are not part of either text format
// (they come from the options file) and are not compared.
bool structurally_equal(const Program& a, const Program& b);

const char* format_name(Format f);

}  // namespace aspnk

#endif  // ASPNK_PARSE_HPP
