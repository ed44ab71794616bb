#include "nilshift/weyl/weyl.hpp"

#include <cctype>
#include <deque>
#include <sstream>

#include "nilshift/symbolic/errors.hpp"

namespace nilshift {

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (n_ != o.n_) throw MismatchError("integer matrix size mismatch");
  IntMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      int a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

std::vector<int> IntMatrix::operator*(const std::vector<int>& v) const {
  if (v.size() != n_) throw MismatchError("integer matrix-vector size mismatch");
  std::vector<int> r(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) r[i] += (*this)(i, k) * v[k];
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

IntMatrix IntMatrix::inverse() const {
  std::size_t n = n_;
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (*this)(i, j);
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw MathError("singular integer matrix");
    std::swap(a[p], a[c]);
    Rational inv = Rational(1) / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  IntMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& x = a[i][n + j];
      if (!is_integer(x)) throw MathError("integer matrix is not unimodular");
      r(i, j) = static_cast<int>(x.get_num().get_si());
    }
  return r;
}

bool IntMatrix::is_identity() const { return *this == identity(n_); }

// ---------------------------------------------------------------- RootDatum

RootDatum::RootDatum(std::vector<Factor> factors) : factors_(std::move(factors)) {
  std::vector<std::vector<int>> cartan_blocks;
  std::vector<std::size_t> offsets;
  for (const auto& f : factors_) {
    if (f.n < 1) throw MismatchError("factor rank must be positive");
    if (!name_.empty()) name_ += "x";
    if (f.kind == Factor::Kind::Torus) {
      name_ += f.n == 1 ? "S1" : "T" + std::to_string(f.n);
      rank_ += static_cast<std::size_t>(f.n);
    } else {
      if (f.n < 2) throw MismatchError("SU(n) needs n >= 2");
      name_ += "SU" + std::to_string(f.n);
      offsets.push_back(rank_);
      rank_ += static_cast<std::size_t>(f.n - 1);
    }
  }
  if (factors_.empty()) name_ = "trivial";
  std::vector<PolyRing::Var> vars{{"u", false}};
  for (std::size_t k = 0; k < rank_; ++k) vars.push_back({rank_ == 1 ? "h" : "h" + std::to_string(k + 1), false});
  ring_ = PolyRing::make(vars);
  pairing_ = IntMatrix::identity(rank_);

  std::size_t off_idx = 0;
  for (const auto& f : factors_) {
    if (f.kind != Factor::Kind::SU) continue;
    std::size_t off = offsets[off_idx++];
    std::size_t m = static_cast<std::size_t>(f.n - 1);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<int> root(rank_, 0), coroot(rank_, 0);
      for (std::size_t k = 0; k < m; ++k) {
        int a = (i == k) ? 2 : ((i + 1 == k || k + 1 == i) ? -1 : 0);
        root[off + k] = a;
      }
      coroot[off + i] = 1;
      IntMatrix s = IntMatrix::identity(rank_);
      for (std::size_t j = 0; j < rank_; ++j) s(off + i, j) -= root[j];
      simple_roots_.push_back(root);
      simple_coroots_.push_back(coroot);
      simple_cochar_.push_back(s);
    }
  }

  // BFS enumeration of W.
  weyl_.push_back(IntMatrix::identity(rank_));
  words_.push_back({});
  weyl_lookup_[weyl_.front()] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < simple_cochar_.size(); ++i) {
      IntMatrix next = weyl_[cur] * simple_cochar_[i];
      if (weyl_lookup_.count(next)) continue;
      weyl_lookup_[next] = weyl_.size();
      weyl_.push_back(next);
      auto w = words_[cur];
      w.push_back(i);
      words_.push_back(w);
      queue.push_back(weyl_.size() - 1);
    }
  }
}

std::shared_ptr<const RootDatum> RootDatum::parse(const std::string& descriptor) {
  std::vector<Factor> factors;
  std::stringstream ss(descriptor);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    if (part.empty()) throw ParseError("empty factor in group descriptor '" + descriptor + "'");
    auto number = [&](std::size_t from) {
      std::string digits = part.substr(from);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("bad group factor '" + part + "'");
      }
      return std::stoi(digits);
    };
    if (part == "S1" || part == "U1") {
      factors.push_back({Factor::Kind::Torus, 1});
    } else if (part.rfind("SU", 0) == 0) {
      int n = number(2);
      if (n < 2) throw ParseError("SU(n) needs n >= 2 in '" + descriptor + "'");
      factors.push_back({Factor::Kind::SU, n});
    } else if (part[0] == 'T') {
      int n = number(1);
      if (n < 1) throw ParseError("torus rank must be positive in '" + descriptor + "'");
      factors.push_back({Factor::Kind::Torus, n});
    } else {
      throw ParseError("unknown group factor '" + part + "'");
    }
  }
  if (factors.empty()) throw ParseError("empty group descriptor");
  return std::make_shared<const RootDatum>(std::move(factors));
}

int RootDatum::pairing(const std::vector<int>& character, const std::vector<int>& cocharacter) const {
  int s = 0;
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) s += character[i] * pairing_(i, j) * cocharacter[j];
  return s;
}

RatFunc RootDatum::character_poly(const std::vector<int>& character) const {
  Polynomial p(ring_);
  for (std::size_t k = 0; k < rank_; ++k) {
    if (character[k] != 0) p += Polynomial::variable(ring_, h_index(k)) * Rational(character[k]);
  }
  return RatFunc(p);
}

const std::vector<std::size_t>& RootDatum::word(const IntMatrix& w) const { return words_[weyl_index(w)]; }

std::size_t RootDatum::weyl_index(const IntMatrix& w) const {
  auto it = weyl_lookup_.find(w);
  if (it == weyl_lookup_.end()) throw MismatchError("matrix is not an element of the Weyl group of " + name_);
  return it->second;
}

IntMatrix RootDatum::character_action(const IntMatrix& w) const { return w.inverse().transpose(); }

// ---------------------------------------------------------------- Twist

RatFunc Twist::operator()(const RatFunc& f) const {
  if (images_.empty() || f.is_zero()) return f;
  if (same_ring(f.ring(), ring_)) return f.substitute(images_);
  return f.substitute(extend_to(f.ring()).images_);
}

Twist Twist::extend_to(const RingPtr& target) const {
  if (same_ring(target, ring_)) return *this;
  std::map<std::size_t, RatFunc> out;
  for (const auto& [i, img] : images_) {
    int t = target->index(ring_->name(i));
    if (t < 0) continue;
    out.emplace(static_cast<std::size_t>(t), img.embed(target));
  }
  return Twist(target, std::move(out));
}

Twist Twist::compose(const Twist& inner) const {
  std::map<std::size_t, RatFunc> out;
  for (const auto& [i, img] : inner.images_) out.emplace(i, (*this)(img));
  for (const auto& [i, img] : images_) out.emplace(i, img);
  for (auto it = out.begin(); it != out.end();) {
    if (it->second == RatFunc::variable(ring_, ring_->name(it->first))) {
      it = out.erase(it);
    } else {
      ++it;
    }
  }
  return Twist(ring_, std::move(out));
}

bool Twist::operator==(const Twist& o) const {
  auto norm = [](const Twist& t) {
    std::map<std::size_t, RatFunc> m;
    for (const auto& [i, img] : t.images_) {
      if (img != RatFunc::variable(t.ring_, t.ring_->name(i))) m.emplace(i, img);
    }
    return m;
  };
  return same_ring(ring_, o.ring_) && norm(*this) == norm(o);
}

// ---------------------------------------------------------------- AffineWeylElement

AffineWeylElement::AffineWeylElement(DatumPtr datum, std::vector<int> sigma, IntMatrix w)
    : datum_(std::move(datum)), sigma_(std::move(sigma)), w_(std::move(w)) {
  if (sigma_.size() != datum_->rank() || w_.size() != datum_->rank()) {
    throw MismatchError("affine Weyl element does not match rank of " + datum_->name());
  }
  datum_->weyl_index(w_);
}

AffineWeylElement AffineWeylElement::identity(DatumPtr datum) {
  std::size_t r = datum->rank();
  return AffineWeylElement(std::move(datum), std::vector<int>(r, 0), IntMatrix::identity(r));
}

AffineWeylElement AffineWeylElement::translation(DatumPtr datum, std::vector<int> sigma) {
  std::size_t r = datum->rank();
  return AffineWeylElement(std::move(datum), std::move(sigma), IntMatrix::identity(r));
}

AffineWeylElement AffineWeylElement::weyl(DatumPtr datum, IntMatrix w) {
  std::size_t r = datum->rank();
  return AffineWeylElement(std::move(datum), std::vector<int>(r, 0), std::move(w));
}

AffineWeylElement AffineWeylElement::simple_reflection(DatumPtr datum, std::size_t i) {
  IntMatrix s = datum->simple_reflection(i);
  return weyl(std::move(datum), std::move(s));
}

AffineWeylElement AffineWeylElement::operator*(const AffineWeylElement& o) const {
  if (!(*datum_ == *o.datum_)) throw MismatchError("affine Weyl elements of different root data");
  std::vector<int> ws = w_ * o.sigma_;
  std::vector<int> s(sigma_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = sigma_[i] + ws[i];
  return AffineWeylElement(datum_, std::move(s), w_ * o.w_);
}

AffineWeylElement AffineWeylElement::inverse() const {
  IntMatrix wi = w_.inverse();
  std::vector<int> s = wi * sigma_;
  for (auto& x : s) x = -x;
  return AffineWeylElement(datum_, std::move(s), std::move(wi));
}

bool AffineWeylElement::is_identity() const {
  for (int x : sigma_) {
    if (x != 0) return false;
  }
  return w_.is_identity();
}

bool AffineWeylElement::operator<(const AffineWeylElement& o) const {
  std::size_t a = datum_->weyl_index(w_), b = o.datum_->weyl_index(o.w_);
  if (a != b) return a < b;
  return sigma_ < o.sigma_;
}

std::string cocharacter_string(const std::vector<int>& sigma) {
  std::string s = "(";
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sigma[i]);
  }
  return s + ")";
}

std::vector<int> parse_cocharacter(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t.front() == '(') t = t.substr(1);
  if (!t.empty() && t.back() == ')') t.pop_back();
  std::vector<int> out;
  if (t.empty()) return out;
  std::stringstream ss(t);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size()) throw ParseError("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("malformed co-character '" + text + "'");
    }
  }
  return out;
}

std::string AffineWeylElement::to_string() const {
  std::string s = cocharacter_string(sigma_) + ";";
  const auto& word = datum_->word(w_);
  if (word.empty()) return s + "id";
  for (auto i : word) s += "s" + std::to_string(i + 1);
  return s;
}

AffineWeylElement AffineWeylElement::parse(DatumPtr datum, const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) throw ParseError("affine Weyl element needs '(sigma);word': " + text);
  std::vector<int> sigma = parse_cocharacter(text.substr(0, semi));
  if (sigma.size() != datum->rank()) throw ParseError("co-character has wrong rank in '" + text + "'");
  std::string word = text.substr(semi + 1);
  IntMatrix w = IntMatrix::identity(datum->rank());
  if (word != "id") {
    std::size_t pos = 0;
    while (pos < word.size()) {
      if (word[pos] != 's') throw ParseError("malformed Weyl word in '" + text + "'");
      std::size_t end = pos + 1;
      while (end < word.size() && std::isdigit(static_cast<unsigned char>(word[end]))) ++end;
      if (end == pos + 1) throw ParseError("malformed Weyl word in '" + text + "'");
      std::size_t i = static_cast<std::size_t>(std::stoi(word.substr(pos + 1, end - pos - 1)));
      if (i < 1 || i > datum->num_simple()) throw ParseError("reflection index out of range in '" + text + "'");
      w = w * datum->simple_reflection(i - 1);
      pos = end;
    }
  }
  return AffineWeylElement(std::move(datum), std::move(sigma), std::move(w));
}

Twist twist_automorphism(const AffineWeylElement& a) {
  const RootDatum& d = *a.datum();
  IntMatrix wc = d.character_action(a.w());
  RatFunc u = RatFunc::variable(d.ring(), "u");
  std::map<std::size_t, RatFunc> images;
  for (std::size_t k = 0; k < d.rank(); ++k) {
    std::vector<int> image(d.rank());
    for (std::size_t j = 0; j < d.rank(); ++j) image[j] = wc(j, k);
    int shift = kTwistSign * d.pairing(image, a.sigma());
    RatFunc img = d.character_poly(image) + u * Rational(shift);
    images.emplace(d.h_index(k), img);
  }
  return Twist(d.ring(), std::move(images));
}

}  // namespace nilshift
