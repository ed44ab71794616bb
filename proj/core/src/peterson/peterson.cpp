#include "nilshift/peterson/peterson.hpp"

#include <algorithm>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

namespace {

Vec at_u0(const Vec& y, const std::string& what) {
  Vec out;
  for (const auto& c : y) {
    try {
      out.push_back(c.evaluate(0, 0));
    } catch (const MathError& e) {
      throw MathError(what + " has a pole at u=0: " + e.what());
    }
  }
  return out;
}

std::string residual_text(const Vec& r) {
  std::string out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i].is_zero()) continue;
    if (!out.empty()) out += "; ";
    out += "[" + std::to_string(i) + "] " + r[i].to_string();
  }
  return out.empty() ? "0" : out;
}

Vec difference(const Vec& a, const Vec& b) {
  Vec r;
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] - b[i]);
  return r;
}

}  // namespace

std::string format_cocharacter(const std::vector<int>& sigma) { return cocharacter_string(sigma); }

PetersonImage peterson_eval(const ShiftDatum& s, const std::vector<int>& sigma) {
  auto image = [&](const std::vector<int>& t) {
    auto op = s.compose(AffineWeylElement::translation(s.group(), t));
    return at_u0(op.apply(s.unit()), "S_" + cocharacter_string(t) + "(1)");
  };
  std::vector<int> neg(sigma.size());
  std::transform(sigma.begin(), sigma.end(), neg.begin(), [](int x) { return -x; });
  return PetersonImage{sigma, image(sigma), image(neg)};
}

std::vector<std::vector<int>> lattice_box(std::size_t rank, int radius) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t k = 0; k < rank; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out) {
      for (int x = -radius; x <= radius; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    }
    out = std::move(next);
  }
  return out;
}

bool PetersonReport::passed() const { return failures() == 0; }

std::size_t PetersonReport::failures() const {
  auto bad = [](const PetersonEntry& e) { return !e.pass; };
  return static_cast<std::size_t>(std::count_if(products.begin(), products.end(), bad) +
                                  std::count_if(batyrev.begin(), batyrev.end(), bad));
}

PetersonReport peterson_homomorphism_check(const ShiftDatum& s, PetersonTable& table, int radius) {
  auto get = [&](const std::vector<int>& t) -> const Vec& {
    auto it = table.find(t);
    if (it == table.end()) it = table.emplace(t, peterson_eval(s, t).image).first;
    return it->second;
  };
  PetersonReport rep;
  auto box = lattice_box(s.group()->rank(), radius);
  for (const auto& a : box) {
    Vec z = s.pull(s.module().z_class(s.action().apply_iota(a)));
    Vec r = difference(get(a), z);
    std::string text = residual_text(r);
    rep.batyrev.push_back({a, {}, text, text == "0"});
  }
  for (const auto& a : box) {
    for (const auto& b : box) {
      std::vector<int> sum(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) sum[k] = a[k] + b[k];
      Vec lhs = s.mul(get(a), get(b));
      std::string text = residual_text(difference(lhs, get(sum)));
      rep.products.push_back({a, b, text, text == "0"});
    }
  }
  return rep;
}

}  // namespace nilshift
