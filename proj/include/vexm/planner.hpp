#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vexm/lang.hpp"

namespace vexm {

class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PlannerOptions {
  std::size_t max_states = 1'000'000;  // expansion cap before giving up
};

/// All type-consistent groundings of the domain's action schemas, sorted by
/// (name, args) so search order is deterministic.
std::vector<GroundAction> ground_actions(const Domain& domain, const Problem& problem);

/// Shortest action sequence from problem.init to problem.goal under STRIPS
/// progression (breadth-first; ties broken lexicographically by action name
/// then argument order). Throws PlanningError when the goal is unreachable
/// or the state cap is exceeded.
std::vector<GroundAction> plan(const Domain& domain, const Problem& problem,
                               const PlannerOptions& options = {});

/// Applies one ground action; throws PlanningError if a precondition fails.
AtomSet apply_action(const Domain& domain, const Problem& problem, const AtomSet& state,
                     const GroundAction& action);

/// Ground pre/add/del sets for one action instance.
struct GroundedEffects {
  AtomSet pre;
  AtomSet add;
  AtomSet del;
};
GroundedEffects ground_effects(const Domain& domain, const Problem& problem,
                               const GroundAction& action);

}  // namespace vexm
