#include "nilshift/symbolic/poly_ring.hpp"

#include <set>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

PolyRing::PolyRing(std::vector<Var> vars) : vars_(std::move(vars)) {
  std::set<std::string> seen;
  for (const auto& v : vars_) {
    if (v.name.empty()) throw MismatchError("empty variable name");
    if (!seen.insert(v.name).second) throw MismatchError("duplicate variable '" + v.name + "'");
  }
}

std::shared_ptr<const PolyRing> PolyRing::make(std::vector<Var> vars) {
  return std::make_shared<const PolyRing>(std::move(vars));
}

int PolyRing::index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

int PolyRing::require(std::string_view name) const {
  int i = index(name);
  if (i < 0) throw MismatchError("variable '" + std::string(name) + "' not in ring " + describe());
  return i;
}

bool PolyRing::operator==(const PolyRing& other) const {
  if (vars_.size() != other.vars_.size()) return false;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name != other.vars_[i].name || vars_[i].laurent != other.vars_[i].laurent) return false;
  }
  return true;
}

std::string PolyRing::describe() const {
  std::string s = "[";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) s += ",";
    s += vars_[i].name;
    if (vars_[i].laurent) s += "^±";
  }
  return s + "]";
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace nilshift
