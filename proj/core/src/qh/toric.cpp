#include "nilshift/qh/toric.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

namespace {

long det(IntMatrix m) {
  // Bareiss on small integer matrices.
  std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  int sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1].get_si();
}

std::vector<std::vector<std::size_t>> consecutive_cones(std::size_t n) {
  std::vector<std::vector<std::size_t>> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back({i, (i + 1) % n});
  return c;
}

ToricData projective_space(std::size_t n) {
  ToricData t;
  t.name = "CP" + std::to_string(n);
  t.rank = n;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    t.rays.push_back(e);
  }
  t.rays.emplace_back(n, -1);
  // Cone k omits ray n - k, so cone 0 is the standard basis.
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != n - k) c.push_back(i);
    t.cones.push_back(c);
  }
  return t;
}

ToricData polygon(const std::string& name, std::vector<std::vector<int>> rays) {
  ToricData t;
  t.name = name;
  t.rank = 2;
  t.cones = consecutive_cones(rays.size());
  t.rays = std::move(rays);
  return t;
}

}  // namespace

IntMatrix ToricData::cone_matrix(std::size_t p) const {
  IntMatrix m(rank);
  const auto& c = cones.at(p);
  if (c.size() != rank) throw MathError("cone " + std::to_string(p) + " does not have " + std::to_string(rank) + " rays");
  for (std::size_t j = 0; j < rank; ++j)
    for (std::size_t i = 0; i < rank; ++i) m(i, j) = rays.at(c[j]).at(i);
  return m;
}

bool ToricData::is_smooth() const {
  for (std::size_t p = 0; p < cones.size(); ++p) {
    if (cones[p].size() != rank) return false;
    long d = det(cone_matrix(p));
    if (d != 1 && d != -1) return false;
  }
  return true;
}

bool ToricData::is_complete() const {
  if (rank == 0) return cones.size() == 1 && cones[0].empty() && rays.empty();
  if (cones.empty()) return false;
  // Every wall lies in exactly two cones, on opposite sides.
  std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> walls;
  for (std::size_t p = 0; p < cones.size(); ++p) {
    for (std::size_t k = 0; k < rank; ++k) {
      std::vector<std::size_t> w;
      for (std::size_t j = 0; j < rank; ++j)
        if (j != k) w.push_back(cones[p][j]);
      std::sort(w.begin(), w.end());
      walls[w].emplace_back(p, k);
    }
  }
  for (const auto& [w, owners] : walls) {
    if (owners.size() != 2) return false;
    auto [p, k] = owners[0];
    IntMatrix inv = cone_matrix(p).inverse();
    const auto& other = rays[cones[owners[1].first][owners[1].second]];
    long side = 0;
    for (std::size_t i = 0; i < rank; ++i) side += inv(k, i) * other[i];
    if (side >= 0) return false;
  }
  std::set<std::size_t> used;
  for (const auto& c : cones) used.insert(c.begin(), c.end());
  return used.size() == rays.size();
}

bool ToricData::is_monotone() const {
  for (std::size_t p = 0; p < cones.size(); ++p) {
    IntMatrix inv = cone_matrix(p).inverse();
    // m with <m, v> = 1 on the rays of p.
    std::vector<long> m(rank, 0);
    for (std::size_t j = 0; j < rank; ++j)
      for (std::size_t i = 0; i < rank; ++i) m[j] += inv(i, j);
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (std::find(cones[p].begin(), cones[p].end(), r) != cones[p].end()) continue;
      long v = 0;
      for (std::size_t i = 0; i < rank; ++i) v += m[i] * rays[r][i];
      if (v >= 1) return false;
    }
  }
  return true;
}

void ToricData::validate() const {
  for (const auto& v : rays) {
    if (v.size() != rank) throw MathError("ray of wrong length in fan '" + name + "'");
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) throw MathError("zero ray in fan '" + name + "'");
  }
  if (std::set<std::vector<int>>(rays.begin(), rays.end()).size() != rays.size()) {
    throw MathError("duplicate ray in fan '" + name + "'");
  }
  for (const auto& c : cones)
    for (auto r : c)
      if (r >= rays.size()) throw MathError("cone refers to missing ray " + std::to_string(r));
  if (!is_smooth()) throw MathError("fan '" + name + "' is not smooth");
  if (!is_complete()) throw MathError("fan '" + name + "' is not complete");
  if (!is_monotone()) throw MathError("fan '" + name + "' is not monotone (not Fano)");
}

ToricData ToricData::normalized() const {
  if (rank == 0) return *this;
  IntMatrix inv = cone_matrix(0).inverse();
  ToricData t = *this;
  for (auto& v : t.rays) v = inv * v;
  return t;
}

std::vector<int> ToricData::divisor_restriction(std::size_t rho, std::size_t p) const {
  std::vector<int> w(rank, 0);
  const auto& c = cones.at(p);
  auto it = std::find(c.begin(), c.end(), rho);
  if (it == c.end()) return w;
  std::size_t k = static_cast<std::size_t>(it - c.begin());
  IntMatrix inv = cone_matrix(p).inverse();
  for (std::size_t i = 0; i < rank; ++i) w[i] = -inv(k, i);
  return w;
}

std::vector<std::vector<int>> ToricData::tangent_weights(std::size_t p) const {
  std::vector<std::vector<int>> out;
  for (auto rho : cones.at(p)) out.push_back(divisor_restriction(rho, p));
  return out;
}

ToricData ToricData::parse(const std::string& text) {
  ToricData t;
  bool have_rank = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto fail = [&](const std::string& msg) {
      throw ParseError("fan line " + std::to_string(lineno) + ": " + msg);
    };
    if (key == "name") {
      if (!(ls >> t.name)) fail("missing name");
    } else if (key == "rank") {
      long r;
      if (!(ls >> r) || r < 0) fail("bad rank");
      t.rank = static_cast<std::size_t>(r);
      have_rank = true;
    } else if (key == "ray") {
      if (!have_rank) fail("ray before rank");
      std::vector<int> v;
      int x;
      while (ls >> x) v.push_back(x);
      if (!ls.eof()) fail("bad ray entry");
      if (v.size() != t.rank) fail("ray has " + std::to_string(v.size()) + " entries, expected " + std::to_string(t.rank));
      t.rays.push_back(v);
    } else if (key == "cone") {
      std::vector<std::size_t> c;
      long x;
      while (ls >> x) {
        if (x < 0) fail("negative ray index");
        c.push_back(static_cast<std::size_t>(x));
      }
      if (!ls.eof()) fail("bad cone entry");
      t.cones.push_back(c);
    } else {
      fail("unknown keyword '" + key + "'");
    }
  }
  if (!have_rank) throw ParseError("fan file has no rank line");
  if (t.rank == 0 && t.cones.empty()) t.cones.push_back({});
  if (t.name.empty()) t.name = "fan";
  return t;
}

ToricData ToricData::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open fan file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string ToricData::to_text() const {
  std::ostringstream out;
  out << "name " << name << "\nrank " << rank << "\n";
  for (const auto& v : rays) {
    out << "ray";
    for (int x : v) out << ' ' << x;
    out << "\n";
  }
  for (const auto& c : cones) {
    if (c.empty()) continue;
    out << "cone";
    for (auto x : c) out << ' ' << x;
    out << "\n";
  }
  return out.str();
}

std::vector<std::string> ToricData::catalog_names() {
  return {"point", "CP1", "CP2", "CP1xCP1", "CP3", "CP4", "Bl1", "Bl2", "Bl3"};
}

ToricData ToricData::catalog(const std::string& name) {
  if (name == "point") {
    ToricData t;
    t.name = "point";
    t.cones.push_back({});
    return t;
  }
  if (name.size() == 3 && name.rfind("CP", 0) == 0 && name[2] >= '1' && name[2] <= '4') {
    return projective_space(static_cast<std::size_t>(name[2] - '0'));
  }
  if (name == "CP1xCP1") return polygon(name, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  if (name == "Bl1") return polygon(name, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}});
  if (name == "Bl2") return polygon(name, {{1, 0}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
  if (name == "Bl3") return polygon(name, {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}});
  throw Error("unknown catalog space '" + name + "'");
}

}  // namespace nilshift
