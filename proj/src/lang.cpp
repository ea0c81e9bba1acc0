#include "vexm/lang.hpp"

#include <algorithm>

namespace vexm {

bool Domain::is_subtype(const std::string& t, const std::string& ancestor) const {
  if (ancestor == "object") return true;
  std::string cur = t;
  while (true) {
    if (cur == ancestor) return true;
    auto it = type_parent.find(cur);
    if (it == type_parent.end()) return false;
    if (it->second == cur) return false;
    cur = it->second;
    if (cur == "object") return ancestor == "object";
  }
}

const ObjectClass* Domain::find_class(const std::string& n) const {
  for (const auto& c : classes)
    if (c.name == n) return &c;
  return nullptr;
}

const RelationName* Domain::find_relation(const std::string& n) const {
  for (const auto& r : relations)
    if (r.name == n) return &r;
  return nullptr;
}

const ActionSpec* Domain::find_action(const std::string& n) const {
  for (const auto& a : actions)
    if (a.name == n) return &a;
  return nullptr;
}

Index Domain::class_index(const std::string& n) const {
  for (Index i = 0; i < static_cast<Index>(classes.size()); ++i)
    if (classes[i].name == n) return i;
  return -1;
}

Index Domain::relation_index(const std::string& n) const {
  for (Index i = 0; i < static_cast<Index>(relations.size()); ++i)
    if (relations[i].name == n) return i;
  return -1;
}

bool Domain::operator==(const Domain& o) const {
  auto class_eq = [](const ObjectClass& a, const ObjectClass& b) {
    return a.name == b.name && a.graspable == b.graspable && a.detectable == b.detectable;
  };
  if (name != o.name || type_parent != o.type_parent || constants != o.constants ||
      actions != o.actions || classes.size() != o.classes.size() ||
      relations.size() != o.relations.size())
    return false;
  for (size_t i = 0; i < classes.size(); ++i)
    if (!class_eq(classes[i], o.classes[i])) return false;
  for (size_t i = 0; i < relations.size(); ++i)
    if (relations[i].name != o.relations[i].name ||
        relations[i].domain_pairs != o.relations[i].domain_pairs)
      return false;
  return true;
}

std::string GroundAction::str() const {
  std::string s = name + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i];
  }
  return s + ")";
}

std::vector<Instance> all_instances(const Domain& domain, const Problem& problem) {
  std::vector<Instance> out = domain.constants;
  out.insert(out.end(), problem.objects.begin(), problem.objects.end());
  return out;
}

std::string instance_class(const Domain& domain, const Problem& problem, const std::string& id) {
  for (const auto& inst : domain.constants)
    if (inst.id == id) return inst.type;
  for (const auto& inst : problem.objects)
    if (inst.id == id) return inst.type;
  return {};
}

std::optional<std::string> check_atom(const Domain& domain,
                                      const std::vector<Instance>& instances,
                                      const RelationAtom& atom) {
  const RelationName* rel = domain.find_relation(atom.relation);
  if (!rel) return "unknown relation '" + atom.relation + "'";
  auto type_of = [&](const std::string& id) -> std::string {
    for (const auto& inst : instances)
      if (inst.id == id) return inst.type;
    return {};
  };
  const std::string ts = type_of(atom.subject);
  const std::string to = type_of(atom.object);
  if (ts.empty()) return "unknown instance '" + atom.subject + "'";
  if (to.empty()) return "unknown instance '" + atom.object + "'";
  if (!rel->allows(ts, to))
    return atom.str() + " is outside the domain of relation " + atom.relation;
  return std::nullopt;
}

}  // namespace vexm
