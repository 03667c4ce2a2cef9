#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lieshear/error.hpp"
#include "lieshear/linalg.hpp"
#include "lieshear/rational.hpp"

namespace lieshear {

inline constexpr int kMaxDim = 14;

/// Basis wedge e_{i1...ik} with i1 < ... < ik, stored as a bitmask
/// (bit i-1 set for index i).
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint16_t mask) : mask_(mask) {}

  /// From 1-based indices in strictly increasing order.
  static Monomial of(std::initializer_list<int> indices) {
    std::uint16_t m = 0;
    int last = 0;
    for (int i : indices) {
      if (i <= last || i > kMaxDim)
        throw DimensionError("monomial indices must be strictly increasing in 1.." +
                             std::to_string(kMaxDim));
      m = static_cast<std::uint16_t>(m | (1u << (i - 1)));
      last = i;
    }
    return Monomial(m);
  }

  constexpr std::uint16_t mask() const { return mask_; }
  constexpr int degree() const { return std::popcount(static_cast<unsigned>(mask_)); }
  constexpr bool contains(int index) const { return (mask_ >> (index - 1)) & 1u; }
  /// Highest index present, 0 for the empty monomial.
  constexpr int top() const { return std::bit_width(static_cast<unsigned>(mask_)); }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 1; i <= kMaxDim; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  /// Number of indices strictly below `index`.
  constexpr int position_of(int index) const {
    return std::popcount(static_cast<unsigned>(mask_ & ((1u << (index - 1)) - 1u)));
  }

  friend constexpr bool operator==(Monomial a, Monomial b) { return a.mask_ == b.mask_; }

 private:
  std::uint16_t mask_ = 0;
};

/// Lexicographic order on the sorted index sequences (e12 < e13 < e14 < e23),
/// with lower degree first.
struct MonomialLess {
  constexpr bool operator()(Monomial a, Monomial b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    const unsigned diff = static_cast<unsigned>(a.mask() ^ b.mask());
    if (diff == 0) return false;
    // smallest index in the symmetric difference belongs to the smaller set
    const unsigned lowest = diff & (~diff + 1u);
    return (a.mask() & lowest) != 0;
  }
};

/// Sign of e_I ∧ e_J relative to e_{I∪J}; 0 when I and J overlap.
constexpr int wedge_sign(Monomial a, Monomial b) {
  if (a.mask() & b.mask()) return 0;
  int inversions = 0;
  unsigned rest = b.mask();
  while (rest) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(static_cast<unsigned>(a.mask()) >> (j + 1));
    rest &= rest - 1;
  }
  return (inversions & 1) ? -1 : 1;
}

/// Homogeneous exterior form of fixed degree on Q^n with exact
/// coefficients. Zero coefficients are never stored, and terms iterate in
/// MonomialLess order. A degree above n is allowed and always zero.
class KForm {
 public:
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  KForm() = default;
  KForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || dim > kMaxDim)
      throw DimensionError("ambient dimension " + std::to_string(dim) + " outside 0.." +
                           std::to_string(kMaxDim));
    if (degree < 0) throw DimensionError("negative form degree");
  }

  static KForm scalar(int dim, const Rational& value) {
    KForm f(dim, 0);
    f.add_term(Monomial(), value);
    return f;
  }

  /// coeff * e_{i1} ∧ ... ∧ e_{ik}; indices are 1-based and may come in
  /// any order (the permutation sign is applied) but must be distinct.
  static KForm basis(int dim, std::initializer_list<int> indices, const Rational& coeff = 1) {
    return basis(dim, std::vector<int>(indices), coeff);
  }
  static KForm basis(int dim, const std::vector<int>& indices, const Rational& coeff = 1) {
    KForm f(dim, static_cast<int>(indices.size()));
    std::uint16_t mask = 0;
    int sign = 1;
    for (int i : indices) {
      if (i < 1 || i > dim)
        throw DimensionError("index " + std::to_string(i) + " exceeds dimension " +
                             std::to_string(dim));
      const Monomial single(static_cast<std::uint16_t>(1u << (i - 1)));
      const int s = wedge_sign(Monomial(mask), single);
      if (s == 0) throw DimensionError("repeated index " + std::to_string(i) + " in monomial");
      sign *= s;
      mask = static_cast<std::uint16_t>(mask | single.mask());
    }
    f.add_term(Monomial(mask), sign * coeff);
    return f;
  }

  /// Covector Σ v_i e_i.
  static KForm covector(const Vector& v) {
    KForm f(v.dim(), 1);
    for (int i = 1; i <= v.dim(); ++i)
      f.add_term(Monomial(static_cast<std::uint16_t>(1u << (i - 1))), v[i]);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(Monomial m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Components of a 1-form as a vector of coefficients.
  Vector as_vector() const {
    if (degree_ != 1) throw DimensionError("as_vector requires a 1-form");
    Vector v(dim_);
    for (const auto& [m, c] : terms_) v[m.top()] = c;
    return v;
  }

  void add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    if (m.degree() != degree_ || m.top() > dim_)
      throw DimensionError("monomial does not fit a degree-" + std::to_string(degree_) +
                           " form in dimension " + std::to_string(dim_));
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  KForm& operator+=(const KForm& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  KForm& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(KForm a) { return a *= Rational(-1); }
  friend KForm operator*(const Rational& s, KForm a) { return a *= s; }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  void check_compatible(const KForm& o) const {
    if (o.dim_ != dim_) throw DimensionError("form dimension mismatch");
    if (o.degree_ != degree_)
      throw DimensionError("cannot add forms of degree " + std::to_string(degree_) + " and " +
                           std::to_string(o.degree_));
  }

 private:
  int dim_ = 0;
  int degree_ = 0;
  Terms terms_;
};

inline KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw DimensionError("wedge of forms on different dimensions");
  KForm out(a.dim(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      out.add_term(Monomial(static_cast<std::uint16_t>(ma.mask() | mb.mask())),
                   s > 0 ? ca * cb : Rational(-(ca * cb)));
    }
  return out;
}

/// Wedge power a^k (k >= 0).
inline KForm wedge_power(const KForm& a, int k) {
  KForm out = KForm::scalar(a.dim(), 1);
  for (int i = 0; i < k; ++i) out = wedge(out, a);
  return out;
}

/// Interior product v ⌟ a, an antiderivation of degree -1.
inline KForm interior(const Vector& v, const KForm& a) {
  if (v.dim() != a.dim()) throw DimensionError("interior product dimension mismatch");
  if (a.degree() == 0) return KForm(a.dim(), 0);
  KForm out(a.dim(), a.degree() - 1);
  for (const auto& [m, c] : a.terms())
    for (int i : m.indices()) {
      if (v[i] == 0) continue;
      const Rational term = (m.position_of(i) % 2 ? -1 : 1) * v[i] * c;
      out.add_term(Monomial(static_cast<std::uint16_t>(m.mask() & ~(1u << (i - 1)))), term);
    }
  return out;
}

/// Value of a 1-form on a vector.
inline Rational evaluate(const KForm& covector, const Vector& v) {
  if (covector.degree() != 1) throw DimensionError("evaluate expects a 1-form");
  return interior(v, covector).coeff(Monomial());
}

/// Value of a 2-form on a pair of vectors, ω(v, w).
inline Rational evaluate(const KForm& two_form, const Vector& v, const Vector& w) {
  if (two_form.degree() != 2) throw DimensionError("evaluate expects a 2-form");
  return interior(w, interior(v, two_form)).coeff(Monomial());
}

/// Hodge star for the orthonormal frame e_1..e_n with volume form
/// orientation·e_{1..n}: ⋆e_I = orientation·sign(I, I^c)·e_{I^c}.
inline KForm hodge_star(const KForm& a, int orientation = 1) {
  if (orientation != 1 && orientation != -1) throw Error("orientation must be +1 or -1");
  const int n = a.dim();
  const std::uint16_t full = static_cast<std::uint16_t>((1u << n) - 1u);
  KForm out(n, n - a.degree());
  for (const auto& [m, c] : a.terms()) {
    const Monomial comp(static_cast<std::uint16_t>(full & ~m.mask()));
    out.add_term(comp, orientation * wedge_sign(m, comp) * c);
  }
  return out;
}

/// Pullback of a form under the linear map whose action on covectors is
/// e_i ↦ Σ_j M(i-1, j-1) e_j. For an endomorphism J of the frame this is
/// σ ↦ σ(J·, ..., J·) with M(i, j) = e_i(J E_j).
inline KForm pullback(const KForm& a, const Matrix& m) {
  const int n = a.dim();
  if (m.rows() != n || m.cols() != n) throw DimensionError("pullback matrix shape mismatch");
  std::vector<KForm> images;
  for (int i = 0; i < n; ++i) {
    KForm img(n, 1);
    for (int j = 0; j < n; ++j)
      img.add_term(Monomial(static_cast<std::uint16_t>(1u << j)), m(i, j));
    images.push_back(std::move(img));
  }
  KForm out(n, a.degree());
  for (const auto& [mono, c] : a.terms()) {
    KForm prod = KForm::scalar(n, c);
    for (int i : mono.indices()) prod = wedge(prod, images[static_cast<std::size_t>(i - 1)]);
    out += prod;
  }
  return out;
}

/// Antisymmetric matrix A(i, j) = ω(E_{i+1}, E_{j+1}) of a 2-form.
inline Matrix two_form_matrix(const KForm& omega) {
  if (omega.degree() != 2) throw DimensionError("two_form_matrix expects a 2-form");
  const int n = omega.dim();
  Matrix m(n, n);
  for (const auto& [mono, c] : omega.terms()) {
    const auto idx = mono.indices();
    m(idx[0] - 1, idx[1] - 1) = c;
    m(idx[1] - 1, idx[0] - 1) = -c;
  }
  return m;
}

/// Inverse of two_form_matrix; only the strict upper triangle is read.
inline KForm two_form_from_matrix(const Matrix& m) {
  const int n = m.rows();
  KForm out(n, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.add_term(Monomial(static_cast<std::uint16_t>((1u << i) | (1u << j))), m(i, j));
  return out;
}

}  // namespace lieshear
