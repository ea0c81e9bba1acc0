#pragma once

#include <stdexcept>
#include <string>

#include "vexm/lang.hpp"

namespace vexm {

/// Parse failure with source position. `line`/`column` are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(message + " (line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Supported subset: typed objects, binary predicates, actions with
// conjunctive :precondition and add/delete :effect literals. Disjunctions,
// quantifiers and conditional effects raise an unsupported-feature
// ParseError. Every token must be consumed.
//
// Conventions layered on the subset:
//  * leaf types are the vocabulary classes; classes under type `item` are
//    graspable, classes under `robot` are not detectable;
//  * actions whose effects touch at least one atom with no robot-side
//    argument (instances of `robot`/`agentpart` types) are supply actions,
//    all others egocentric;
//  * actions named `search` or `localize` are visual-search meta actions.
Domain parse_domain(const std::string& source);

Problem parse_problem(const std::string& source, const Domain& domain);

/// Canonical text form; parse_domain(pretty_print(d)) == d on the subset.
std::string pretty_print(const Domain& domain);
std::string pretty_print(const Problem& problem);

/// Plans serialize as one line per action: `t action(arg,...)`.
std::string format_plan(const std::vector<GroundAction>& actions);
std::vector<GroundAction> parse_plan_text(const std::string& text);

}  // namespace vexm
