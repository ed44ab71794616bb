#pragma once

#include <map>
#include <string>
#include <vector>

#include "nilshift/shift/shift.hpp"

namespace nilshift {

/// 𝒫(σ) = S_σ(1) at u=0, with its quantum inverse 𝒫(-σ).
struct PetersonImage {
  std::vector<int> sigma;
  Vec image;
  Vec inverse;
};

/// Throws MathError if compose(σ) has a pole at u=0.
PetersonImage peterson_eval(const ShiftDatum& s, const std::vector<int>& sigma);

/// Images by co-character; entries may be overwritten to inject faults.
using PetersonTable = std::map<std::vector<int>, Vec>;

/// All co-characters with every coordinate in [-radius, radius].
std::vector<std::vector<int>> lattice_box(std::size_t rank, int radius);

struct PetersonEntry {
  std::vector<int> sigma1, sigma2;
  std::string residual;  // "0" on success
  bool pass = true;
};

struct PetersonReport {
  std::vector<PetersonEntry> products;
  /// Images compared with the Batyrev classes z^{ισ}.
  std::vector<PetersonEntry> batyrev;
  bool passed() const;
  std::size_t failures() const;
};

/// 𝒫(σ1)*𝒫(σ2) = 𝒫(σ1+σ2) for all pairs from the box of the given radius, and
/// 𝒫(σ) = z^{ισ}. Images missing from `table` are computed and added.
PetersonReport peterson_homomorphism_check(const ShiftDatum& s, PetersonTable& table, int radius);

std::string format_cocharacter(const std::vector<int>& sigma);

}  // namespace nilshift
