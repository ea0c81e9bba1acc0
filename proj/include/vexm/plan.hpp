#pragma once

#include <string>
#include <vector>

#include "vexm/lang.hpp"
#include "vexm/planner.hpp"
#include "vexm/types.hpp"

namespace vexm {

/// The per-step verification state: preconditions of the action executed at
/// step t, checked before execution, and its postconditions (add effects),
/// checked after. `u` is the union the perception channel must cover.
struct ExecState {
  Index t = 0;
  AtomSet pre;   // H(a_t)
  AtomSet post;  // K(a_t)
  AtomSet u;     // pre ∪ post

  std::vector<std::string> objects() const;  // instance ids referenced by u
};

/// Right-stochastic matrix over plan states plus a terminal goal state and
/// an absorbing failure state. Layout: rows 0..n-1 are exec states, row n is
/// the goal and row n+1 the failure state.
struct TransitionMatrix {
  MatrixX probs;

  static TransitionMatrix nominal(Index num_actions);

  Index size() const { return probs.rows(); }
  Index goal_index() const { return probs.rows() - 2; }
  Index failure_index() const { return probs.rows() - 1; }
  Index next_of(Index t) const { return t + 1; }

  Scalar to_next(Index t) const { return probs(t, next_of(t)); }
  Scalar to_failure(Index t) const { return probs(t, failure_index()); }

  /// Row t becomes (1-loss) on the nominal next state, loss on failure.
  void set_row_from_loss(Index t, Scalar loss);

  bool row_stochastic(Scalar tol = 1e-9) const;
};

struct Plan {
  AtomSet init;
  AtomSet goal;
  std::vector<GroundAction> actions;
  std::vector<ExecState> states;
  TransitionMatrix transitions;         // τ(s'|s,a): nominal 0-1 construction
  std::string primal_object;            // object introduced by the supply action
  AtomSet projected_final;              // STRIPS progression result

  Index supply_index() const;           // -1 when the plan has no supply action
};

class PlanStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Validates `actions` under STRIPS progression from problem.init and builds
/// the execution-state list with the initial 0-1 transition matrix. Throws
/// PlanningError at the first violated precondition and PlanStructureError
/// when more than one supply action is present.
Plan parse_plan(const Domain& domain, const Problem& problem,
                const std::vector<GroundAction>& actions);

/// One task goal: a conjunction of ground atoms.
using Goal = AtomSet;

/// Splits a task into one plan per goal; plan i starts from plan i-1's
/// projected final state.
std::vector<Plan> unpack_task(const Domain& domain, const Problem& base_problem,
                              const std::vector<Goal>& goals,
                              const PlannerOptions& options = {});

}  // namespace vexm
