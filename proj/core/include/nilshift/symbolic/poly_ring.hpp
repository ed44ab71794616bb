#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace nilshift {

/// Variable registry: ordered names, each either polynomial-only or Laurent.
class PolyRing {
 public:
  struct Var {
    std::string name;
    bool laurent = false;
  };

  explicit PolyRing(std::vector<Var> vars);

  static std::shared_ptr<const PolyRing> make(std::vector<Var> vars);

  std::size_t size() const { return vars_.size(); }
  const Var& var(std::size_t i) const { return vars_[i]; }
  const std::string& name(std::size_t i) const { return vars_[i].name; }
  bool laurent(std::size_t i) const { return vars_[i].laurent; }
  const std::vector<Var>& vars() const { return vars_; }

  /// Index of a variable, or -1 if absent.
  int index(std::string_view name) const;
  /// Index of a variable; throws MismatchError if absent.
  int require(std::string_view name) const;

  bool operator==(const PolyRing& other) const;

  std::string describe() const;

 private:
  std::vector<Var> vars_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

/// Structural ring equality; null pointers compare equal only to null.
bool same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace nilshift
