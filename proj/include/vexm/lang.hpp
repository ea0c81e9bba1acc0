#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vexm/types.hpp"

namespace vexm {

/// One class of the robot language vocabulary (a leaf type of the domain).
struct ObjectClass {
  std::string name;
  Rgb color_code = Rgb::Zero();  // mental-map color
  bool graspable = false;
  bool detectable = true;  // false for the robot itself
};

/// A binary relation symbol together with the class pairs it is defined on.
struct RelationName {
  static constexpr int kArity = 2;
  std::string name;
  // Allowed (subject-class, object-class) pairs. Atoms outside this set are
  // rejected by the parser and excluded from loss aggregation.
  std::set<std::pair<std::string, std::string>> domain_pairs;

  bool allows(const std::string& subject_class, const std::string& object_class) const {
    return domain_pairs.count({subject_class, object_class}) > 0;
  }
};

/// Ground binary atom: relation(subject, object) over instance ids.
struct RelationAtom {
  std::string relation;
  std::string subject;
  std::string object;

  auto operator<=>(const RelationAtom&) const = default;
  std::string str() const { return relation + "(" + subject + "," + object + ")"; }
};

using AtomSet = std::set<RelationAtom>;

/// Atom template inside an action schema; arguments are parameter names
/// ("?x") or constants.
struct AtomTemplate {
  std::string relation;
  std::string subject;
  std::string object;

  auto operator<=>(const AtomTemplate&) const = default;
};

struct Parameter {
  std::string name;  // "?x"
  std::string type;

  auto operator<=>(const Parameter&) const = default;
};

/// Action schema. `pre` is a conjunction of positive atoms; effects are
/// split into add and delete sets.
struct ActionSpec {
  enum class Kind { kSupply, kEgocentric };

  std::string name;
  Kind kind = Kind::kEgocentric;
  bool durable = false;        // true iff supply (start/end event pair)
  bool visual_search = false;  // meta action handled by the search policy
  std::vector<Parameter> params;
  std::vector<AtomTemplate> pre;
  std::vector<AtomTemplate> add;
  std::vector<AtomTemplate> del;

  bool operator==(const ActionSpec&) const = default;
};

struct Instance {
  std::string id;
  std::string type;  // class name

  auto operator<=>(const Instance&) const = default;
};

/// Parsed domain: type tree, vocabulary classes, relations, action schemas.
struct Domain {
  std::string name;
  std::map<std::string, std::string> type_parent;  // type -> parent ("object" roots)
  std::vector<ObjectClass> classes;                // leaf types, declaration order
  std::vector<RelationName> relations;             // declaration order
  std::vector<ActionSpec> actions;                 // declaration order
  std::vector<Instance> constants;

  bool is_type(const std::string& t) const { return type_parent.count(t) > 0 || t == "object"; }

  // True if `t` equals `ancestor` or derives from it.
  bool is_subtype(const std::string& t, const std::string& ancestor) const;

  const ObjectClass* find_class(const std::string& name) const;
  const RelationName* find_relation(const std::string& name) const;
  const ActionSpec* find_action(const std::string& name) const;

  Index class_index(const std::string& name) const;
  Index relation_index(const std::string& name) const;

  bool operator==(const Domain& o) const;
};

struct Problem {
  std::string name;
  std::string domain_name;
  std::vector<Instance> objects;  // problem objects (domain constants excluded)
  AtomSet init;
  AtomSet goal;

  bool operator==(const Problem&) const = default;
};

/// Fully instantiated action.
struct GroundAction {
  std::string name;
  std::vector<std::string> args;

  auto operator<=>(const GroundAction&) const = default;
  std::string str() const;
};

/// All instances visible to the planner: problem objects plus domain constants.
std::vector<Instance> all_instances(const Domain& domain, const Problem& problem);

/// Class of an instance id, or empty if unknown.
std::string instance_class(const Domain& domain, const Problem& problem, const std::string& id);

/// Checks a ground atom against the domain (known relation, instances typed
/// within the relation's domain pairs). Returns an error message or nullopt.
std::optional<std::string> check_atom(const Domain& domain,
                                      const std::vector<Instance>& instances,
                                      const RelationAtom& atom);

}  // namespace vexm
