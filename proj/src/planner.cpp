#include "vexm/planner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace vexm {
namespace {

std::string subst(const std::string& arg, const std::map<std::string, std::string>& binding) {
  if (!arg.empty() && arg[0] == '?') {
    auto it = binding.find(arg);
    return it == binding.end() ? arg : it->second;
  }
  return arg;
}

RelationAtom ground_atom(const AtomTemplate& t, const std::map<std::string, std::string>& b) {
  return {t.relation, subst(t.subject, b), subst(t.object, b)};
}

}  // namespace

GroundedEffects ground_effects(const Domain& domain, const Problem& problem,
                               const GroundAction& action) {
  const ActionSpec* spec = domain.find_action(action.name);
  if (!spec) throw PlanningError("unknown action '" + action.name + "'");
  if (spec->params.size() != action.args.size())
    throw PlanningError("action " + action.str() + " expects " +
                        std::to_string(spec->params.size()) + " arguments");
  std::map<std::string, std::string> binding;
  for (size_t i = 0; i < spec->params.size(); ++i) binding[spec->params[i].name] = action.args[i];
  GroundedEffects out;
  for (const auto& a : spec->pre) out.pre.insert(ground_atom(a, binding));
  for (const auto& a : spec->add) out.add.insert(ground_atom(a, binding));
  for (const auto& a : spec->del) out.del.insert(ground_atom(a, binding));
  return out;
}

AtomSet apply_action(const Domain& domain, const Problem& problem, const AtomSet& state,
                     const GroundAction& action) {
  GroundedEffects eff = ground_effects(domain, problem, action);
  for (const auto& p : eff.pre)
    if (!state.count(p))
      throw PlanningError("precondition " + p.str() + " of " + action.str() + " not satisfied");
  AtomSet next = state;
  for (const auto& d : eff.del) next.erase(d);
  for (const auto& a : eff.add) next.insert(a);
  return next;
}

std::vector<GroundAction> ground_actions(const Domain& domain, const Problem& problem) {
  std::vector<Instance> instances = all_instances(domain, problem);
  std::vector<GroundAction> out;
  for (const auto& spec : domain.actions) {
    std::vector<std::vector<std::string>> choices(spec.params.size());
    for (size_t i = 0; i < spec.params.size(); ++i) {
      for (const auto& inst : instances)
        if (domain.is_subtype(inst.type, spec.params[i].type)) choices[i].push_back(inst.id);
      std::sort(choices[i].begin(), choices[i].end());
    }
    std::vector<size_t> idx(spec.params.size(), 0);
    while (true) {
      GroundAction a;
      a.name = spec.name;
      bool valid = true;
      for (size_t i = 0; i < idx.size(); ++i) {
        if (choices[i].empty()) {
          valid = false;
          break;
        }
        a.args.push_back(choices[i][idx[i]]);
      }
      if (!valid) break;
      out.push_back(a);
      if (idx.empty()) break;
      size_t k = idx.size();
      while (k > 0) {
        --k;
        if (++idx[k] < choices[k].size()) break;
        idx[k] = 0;
        if (k == 0) {
          k = SIZE_MAX;
          break;
        }
      }
      if (k == SIZE_MAX) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Atom universe for bitset states: all atoms in init plus everything any
// ground action can add. Preconditions outside the universe are simply
// never satisfiable beyond init.
struct Universe {
  std::vector<RelationAtom> atoms;
  std::map<RelationAtom, uint32_t> index;

  uint32_t intern(const RelationAtom& a) {
    auto it = index.find(a);
    if (it != index.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(atoms.size());
    atoms.push_back(a);
    index.emplace(a, id);
    return id;
  }
};

using Bits = std::vector<uint64_t>;

Bits make_bits(size_t n) { return Bits((n + 63) / 64, 0); }
void set_bit(Bits& b, uint32_t i) { b[i >> 6] |= (uint64_t{1} << (i & 63)); }
bool get_bit(const Bits& b, uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; }

bool contains_all(const Bits& state, const std::vector<uint32_t>& atoms) {
  for (uint32_t a : atoms)
    if (!get_bit(state, a)) return false;
  return true;
}

struct BitsHash {
  size_t operator()(const Bits& b) const {
    size_t h = 1469598103934665603ull;
    for (uint64_t w : b) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct GroundOp {
  std::vector<uint32_t> pre, add, del;
  size_t action_idx;
};

}  // namespace

std::vector<GroundAction> plan(const Domain& domain, const Problem& problem,
                               const PlannerOptions& options) {
  std::vector<GroundAction> actions = ground_actions(domain, problem);

  Universe uni;
  for (const auto& a : problem.init) uni.intern(a);
  std::vector<GroundedEffects> effects;
  effects.reserve(actions.size());
  for (const auto& a : actions) {
    effects.push_back(ground_effects(domain, problem, a));
    for (const auto& atom : effects.back().add) uni.intern(atom);
  }

  // Goal atoms that can never hold make the problem trivially unreachable.
  std::vector<uint32_t> goal;
  for (const auto& g : problem.goal) {
    auto it = uni.index.find(g);
    if (it == uni.index.end())
      throw PlanningError("goal atom " + g.str() + " is not in init and never added");
    goal.push_back(it->second);
  }

  std::vector<GroundOp> ops;
  ops.reserve(actions.size());
  for (size_t i = 0; i < actions.size(); ++i) {
    GroundOp op;
    op.action_idx = i;
    bool feasible = true;
    for (const auto& p : effects[i].pre) {
      auto it = uni.index.find(p);
      if (it == uni.index.end()) {
        feasible = false;  // precondition can never hold
        break;
      }
      op.pre.push_back(it->second);
    }
    if (!feasible) continue;
    for (const auto& a : effects[i].add) op.add.push_back(uni.index.at(a));
    for (const auto& d : effects[i].del) {
      auto it = uni.index.find(d);
      if (it != uni.index.end()) op.del.push_back(it->second);
    }
    ops.push_back(op);
  }

  Bits init = make_bits(uni.atoms.size());
  for (const auto& a : problem.init) set_bit(init, uni.index.at(a));

  if (contains_all(init, goal)) return {};

  std::unordered_map<Bits, std::pair<Bits, size_t>, BitsHash> parent;  // state -> (prev, op)
  std::deque<Bits> frontier;
  parent.emplace(init, std::make_pair(Bits{}, SIZE_MAX));
  frontier.push_back(init);

  while (!frontier.empty()) {
    Bits state = frontier.front();
    frontier.pop_front();
    for (const auto& op : ops) {
      if (!contains_all(state, op.pre)) continue;
      Bits next = state;
      for (uint32_t d : op.del) next[d >> 6] &= ~(uint64_t{1} << (d & 63));
      for (uint32_t a : op.add) set_bit(next, a);
      if (parent.count(next)) continue;
      parent.emplace(next, std::make_pair(state, op.action_idx));
      if (contains_all(next, goal)) {
        std::vector<GroundAction> result;
        Bits cur = next;
        while (true) {
          auto& [prev, idx] = parent.at(cur);
          if (idx == SIZE_MAX) break;
          result.push_back(actions[idx]);
          cur = prev;
        }
        std::reverse(result.begin(), result.end());
        return result;
      }
      if (parent.size() > options.max_states)
        throw PlanningError("state-space cap exceeded (" +
                            std::to_string(options.max_states) + " states)");
      frontier.push_back(next);
    }
  }
  throw PlanningError("goal unreachable");
}

}  // namespace vexm
