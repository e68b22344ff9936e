#pragma once

#include "qcas/degrees.hpp"

namespace qcas {

// Parsed definition file: the algebra, its curve cone, and optionally K.
struct DefinitionFile {
    Bundle bundle;
};

// Line-oriented definition grammar:
//   file      := header item*
//   header    := "algebra" IDENT "dimension" INT
//   item      := "basis" (label ":" INT)+
//              | "product" label "*" label "=" lincomb
//              | "integral" label "=" RAT
//              | "cone" ("ray"|"ineq") vector
//              | "canonical" vector
//              | "#" comment to end of line
//   lincomb   := "0" | term (("+"|"-") term)*
//   term      := [RAT] label
//   vector    := "(" INT ("," INT)* ")"
//   RAT       := ["-"] INT ["/" INT]
// Labels are identifiers or bare integers (the identity is usually "1").
// Products with the identity are implicit and may not be listed. Every
// product of non-identity elements with codimension sum <= n must be
// listed; above n products are implicitly zero and may not be listed.
// Symmetric closure is automatic. Throws QcasError("parse", ...) with
// line/column positions; ring-theoretic checks are left to validate_algebra.
DefinitionFile parse_definition(const std::string& text);

// Canonical emission; parse(print(b)) reproduces b exactly. Comment lines
// are emitted at the top. Throws when K has a non-integer coordinate (the
// grammar stores vectors over the integers).
std::string print_definition(const Bundle& b,
                             const std::vector<std::string>& comments = {});

}  // namespace qcas
