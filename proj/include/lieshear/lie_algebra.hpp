#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lieshear/error.hpp"
#include "lieshear/exterior.hpp"
#include "lieshear/linalg.hpp"
#include "lieshear/polynomial.hpp"

namespace lieshear {

/// Lie algebra presented by the Chevalley–Eilenberg differential of the
/// dual frame e_1..e_n. Sign convention: dα(X, Y) = -α([X, Y]), so the
/// structure constants are c^k_ij = -(de_k)(E_i, E_j).
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(std::vector<KForm> differentials) : d_(std::move(differentials)) {
    const int n = dim();
    if (n < 1 || n > kMaxDim)
      throw DimensionError("algebra dimension must be in 1.." + std::to_string(kMaxDim));
    for (int k = 0; k < n; ++k) {
      const KForm& f = d_[static_cast<std::size_t>(k)];
      if (f.dim() != n || f.degree() != 2)
        throw DimensionError("d e" + std::to_string(k + 1) + " must be a 2-form on R^" +
                             std::to_string(n));
    }
    structure_.assign(static_cast<std::size_t>(n * n * n), Rational(0));
    for (int k = 0; k < n; ++k)
      for (const auto& [m, c] : d_[static_cast<std::size_t>(k)].terms()) {
        const auto idx = m.indices();
        const int i = idx[0] - 1;
        const int j = idx[1] - 1;
        structure_[static_cast<std::size_t>((i * n + j) * n + k)] = -c;
        structure_[static_cast<std::size_t>((j * n + i) * n + k)] = c;
      }
  }

  static LieAlgebra abelian(int n) {
    std::vector<KForm> d;
    for (int k = 0; k < n; ++k) d.emplace_back(n, 2);
    return LieAlgebra(std::move(d));
  }

  int dim() const { return static_cast<int>(d_.size()); }

  /// d e_k, 1-based.
  const KForm& d(int k) const { return d_.at(static_cast<std::size_t>(k - 1)); }
  const std::vector<KForm>& differentials() const { return d_; }

  /// c^k_ij with [E_i, E_j] = Σ_k c^k_ij E_k, all indices 1-based.
  const Rational& structure_constant(int i, int j, int k) const {
    const int n = dim();
    return structure_[static_cast<std::size_t>(((i - 1) * n + (j - 1)) * n + (k - 1))];
  }

  bool is_abelian() const {
    return std::all_of(d_.begin(), d_.end(), [](const KForm& f) { return f.is_zero(); });
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.d_ == b.d_; }

 private:
  std::vector<KForm> d_;
  std::vector<Rational> structure_;
};

/// Extension of the generator differentials to all forms as an
/// antiderivation: d(e_I) = Σ_{i∈I} (-1)^{pos(i)} de_i ∧ e_{I∖i}.
inline KForm d_extend(const LieAlgebra& g, const KForm& a) {
  if (a.dim() != g.dim()) throw DimensionError("d_extend: form and algebra dimensions differ");
  KForm out(a.dim(), a.degree() + 1);
  for (const auto& [m, c] : a.terms())
    for (int i : m.indices()) {
      const KForm& di = g.d(i);
      if (di.is_zero()) continue;
      const Monomial rest(static_cast<std::uint16_t>(m.mask() & ~(1u << (i - 1))));
      const Rational coeff = (m.position_of(i) % 2 ? -1 : 1) * c;
      for (const auto& [md, cd] : di.terms()) {
        const int s = wedge_sign(md, rest);
        if (s == 0) continue;
        out.add_term(Monomial(static_cast<std::uint16_t>(md.mask() | rest.mask())),
                     s * coeff * cd);
      }
    }
  return out;
}

struct JacobiDefect {
  int generator;  // k with d(d e_k) != 0
  KForm dd;       // the offending 3-form
};

struct JacobiReport {
  bool passed = true;
  std::vector<JacobiDefect> defects;
};

/// The Jacobi identity holds iff d∘d vanishes on every generator.
inline JacobiReport jacobi_check(const LieAlgebra& g) {
  JacobiReport r;
  for (int k = 1; k <= g.dim(); ++k) {
    KForm dd = d_extend(g, g.d(k));
    if (!dd.is_zero()) {
      r.passed = false;
      r.defects.push_back({k, std::move(dd)});
    }
  }
  return r;
}

/// [v, w] with component k equal to -(d e_k)(v, w).
inline Vector bracket(const LieAlgebra& g, const Vector& v, const Vector& w) {
  if (v.dim() != g.dim() || w.dim() != g.dim())
    throw DimensionError("bracket: vector and algebra dimensions differ");
  const int n = g.dim();
  Vector out(n);
  for (int i = 1; i <= n; ++i) {
    if (v[i] == 0) continue;
    for (int j = 1; j <= n; ++j) {
      if (w[j] == 0 || i == j) continue;
      const Rational vw = v[i] * w[j];
      for (int k = 1; k <= n; ++k) {
        const Rational& c = g.structure_constant(i, j, k);
        if (c != 0) out[k] += vw * c;
      }
    }
  }
  return out;
}

/// Jacobi identity evaluated directly on brackets of basis vectors,
/// independent of d_extend.
inline bool bracket_jacobi_holds(const LieAlgebra& g) {
  const int n = g.dim();
  std::vector<Vector> e;
  for (int i = 1; i <= n; ++i) e.push_back(Vector::basis(n, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const auto& a = e[static_cast<std::size_t>(i)];
        const auto& b = e[static_cast<std::size_t>(j)];
        const auto& c = e[static_cast<std::size_t>(k)];
        Vector s = bracket(g, bracket(g, a, b), c) + bracket(g, bracket(g, b, c), a) +
                   bracket(g, bracket(g, c, a), b);
        if (!s.is_zero()) return false;
      }
  return true;
}

/// Span of [u, v] over u in a, v in b.
inline Subspace bracket_span(const LieAlgebra& g, const Subspace& a, const Subspace& b) {
  std::vector<Vector> out;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) {
      Vector w = bracket(g, u, v);
      if (!w.is_zero()) out.push_back(std::move(w));
    }
  return Subspace::span(out, g.dim());
}

struct SeriesReport {
  std::vector<Subspace> lower_central;  // g^(1) = [g,g], g^(k) = [g, g^(k-1)]
  std::vector<Subspace> derived;        // g' , g'', ...
  bool abelian = false;
  bool nilpotent = false;
  bool solvable = false;
  std::optional<int> step;            // smallest r with g^(r) = 0
  std::optional<int> derived_length;  // smallest l with g^{(l)} = 0
};

namespace detail {

inline void require_jacobi(const LieAlgebra& g, const char* op) {
  if (!jacobi_check(g).passed)
    throw JacobiError(std::string(op) + ": the Jacobi identity fails (d∘d ≠ 0)");
}

/// Lower central series of the subalgebra `s` taken as a Lie algebra in its
/// own right: s^(1) = [s, s], s^(k) = [s, s^(k-1)], up to stabilization.
inline std::vector<Subspace> lower_central_of(const LieAlgebra& g, const Subspace& s) {
  std::vector<Subspace> out;
  Subspace cur = s;
  while (true) {
    Subspace next = bracket_span(g, s, cur);
    const bool stalled = next.dim() == cur.dim();
    out.push_back(next);
    if (next.is_zero() || stalled) break;
    cur = std::move(next);
  }
  return out;
}

}  // namespace detail

inline SeriesReport series(const LieAlgebra& g) {
  detail::require_jacobi(g, "series");
  SeriesReport r;
  const Subspace full = Subspace::full(g.dim());
  r.lower_central = detail::lower_central_of(g, full);
  if (r.lower_central.back().is_zero()) {
    r.nilpotent = true;
    r.step = static_cast<int>(r.lower_central.size());
  }
  Subspace cur = full;
  while (true) {
    Subspace next = bracket_span(g, cur, cur);
    const bool stalled = next.dim() == cur.dim();
    r.derived.push_back(next);
    if (next.is_zero() || stalled) break;
    cur = std::move(next);
  }
  if (r.derived.back().is_zero()) {
    r.solvable = true;
    r.derived_length = static_cast<int>(r.derived.size());
  }
  r.abelian = r.lower_central.front().is_zero();
  return r;
}

/// Closed 1-forms φ with φ ∧ de_k = 0 for every k. Nonzero exactly when
/// ker φ is a codimension-one abelian ideal, i.e. the algebra is almost
/// Abelian (every Abelian algebra included).
inline Subspace almost_abelian_witnesses(const LieAlgebra& g) {
  const int n = g.dim();
  // Unknown φ = Σ x_i e_i. Each equation is one coefficient of a 2- or 3-form.
  std::vector<std::vector<KForm>> images(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const KForm ei = KForm::basis(n, {i});
    auto& row = images[static_cast<std::size_t>(i - 1)];
    row.push_back(g.d(i));
    for (int k = 1; k <= n; ++k) row.push_back(wedge(ei, g.d(k)));
  }
  std::vector<std::pair<std::size_t, Monomial>> eqs;
  for (const auto& row : images)
    for (std::size_t slot = 0; slot < row.size(); ++slot)
      for (const auto& [m, c] : row[slot].terms())
        if (std::find(eqs.begin(), eqs.end(), std::make_pair(slot, m)) == eqs.end())
          eqs.emplace_back(slot, m);
  if (eqs.empty()) return Subspace::full(n);
  Matrix a(static_cast<int>(eqs.size()), n);
  for (std::size_t r = 0; r < eqs.size(); ++r)
    for (int i = 0; i < n; ++i)
      a(static_cast<int>(r), i) =
          images[static_cast<std::size_t>(i)][eqs[r].first].coeff(eqs[r].second);
  return Subspace::span(nullspace(a), n);
}

struct Classification {
  SeriesReport series;
  int derived_dim = 0;
  bool almost_abelian = false;
};

inline Classification classify(const LieAlgebra& g) {
  Classification c;
  c.series = series(g);
  c.derived_dim = c.series.derived.front().dim();
  c.almost_abelian = !almost_abelian_witnesses(g).is_zero();
  return c;
}

/// V_0 > V_1 > ... > V_{r-1}, V_i = Ann(g^(r-i)) with g^(0) = g, stored as
/// subspaces of coefficient vectors of covectors.
struct Filtration {
  int step = 0;
  std::vector<Subspace> levels;
  Subspace zero;  // V_i for i >= r
  /// V_i, with V_i = {0} for i >= r.
  const Subspace& level(int i) const {
    if (i < static_cast<int>(levels.size())) return levels[static_cast<std::size_t>(i)];
    return zero;
  }
};

/// True when the 2-form lies in Λ²U, where U is given by the vectors it
/// annihilates: ω ∈ Λ²U ⟺ v⌟ω = 0 for every v ∈ Ann(U).
inline bool in_exterior_square(const KForm& omega, const Subspace& u) {
  const Subspace ann = u.annihilator();
  for (const auto& v : ann.basis())
    if (!interior(v, omega).is_zero()) return false;
  return true;
}

inline Filtration twist_filtration(const LieAlgebra& g) {
  const SeriesReport s = series(g);
  if (!s.nilpotent) throw PreconditionError("twist_filtration: the algebra is not nilpotent");
  const int n = g.dim();
  const int r = *s.step;
  auto lcs = [&](int k) {  // g^(k), g^(0) = g
    return k == 0 ? Subspace::full(n) : s.lower_central[static_cast<std::size_t>(k - 1)];
  };
  Filtration f;
  f.step = r;
  f.zero = Subspace(n);
  for (int i = 0; i < r; ++i) f.levels.push_back(lcs(r - i).annihilator());
  for (int i = 0; i < r; ++i) {
    const Subspace next = f.level(i + 1);
    for (const auto& cov : f.levels[static_cast<std::size_t>(i)].basis())
      if (!in_exterior_square(d_extend(g, KForm::covector(cov)), next))
        throw Error("twist_filtration: dV_" + std::to_string(i) + " not contained in Λ²V_" +
                    std::to_string(i + 1));
  }
  return f;
}

/// L_v a = v⌟da + d(v⌟a).
inline KForm lie_derivative(const LieAlgebra& g, const Vector& v, const KForm& a) {
  if (v.dim() != g.dim() || a.dim() != g.dim())
    throw DimensionError("lie_derivative: dimension mismatch");
  KForm out = interior(v, d_extend(g, a));
  if (a.degree() > 0) out += d_extend(g, interior(v, a));
  return out;
}

/// Matrix of ad(v) restricted to the invariant subspace `s`, in the basis
/// s.basis(): column j holds the coordinates of [v, b_j].
inline Matrix restricted_ad(const LieAlgebra& g, const Vector& v, const Subspace& s) {
  const int m = s.dim();
  Matrix out(m, m);
  for (int j = 0; j < m; ++j) {
    const Vector img = bracket(g, v, s.basis()[static_cast<std::size_t>(j)]);
    // RREF basis: coordinates are read off at the pivot columns
    Vector check(g.dim());
    for (int i = 0; i < m; ++i) {
      const Rational c = img[s.pivots()[static_cast<std::size_t>(i)] + 1];
      out(i, j) = c;
      check += c * s.basis()[static_cast<std::size_t>(i)];
    }
    if (!(check == img)) throw Error("restricted_ad: subspace is not ad-invariant");
  }
  return out;
}

struct ShearLine {
  std::vector<Rational> eigenvalues;  // one per acting vector, ad(A_j) X = λ_j X
  Subspace eigenspace;
};

struct ShearLinesReport {
  Subspace derived;                   // n = g'
  Subspace last_term;                 // n^(r-1), the last nonzero lower central term of n
  std::vector<Vector> acting;         // basis of a complement of n in g
  std::vector<ShearLine> lines;       // simultaneous rational eigenspaces
  int non_rational_roots = 0;         // eigenvalues not in Q, counted with multiplicity
  int irrational_real_roots = 0;      // distinct real roots among those
};

/// Candidate generators X of a one-dimensional ideal ξ ⊂ n^(r-1): the
/// simultaneous eigenspaces with rational eigenvalues of the action of
/// g/n on the last term of the lower central series of n = g'.
inline ShearLinesReport find_shear_lines(const LieAlgebra& g) {
  const SeriesReport s = series(g);
  if (!s.solvable) throw PreconditionError("find_shear_lines: the algebra is not solvable");
  if (s.abelian) throw PreconditionError("find_shear_lines: Abelian algebras have no canonical line");
  ShearLinesReport r;
  r.derived = s.derived.front();
  const auto lcs = detail::lower_central_of(g, r.derived);
  r.last_term = r.derived;
  for (const auto& t : lcs)
    if (!t.is_zero()) r.last_term = t;
  r.acting = r.derived.standard_complement();

  struct Piece {
    std::vector<Rational> values;
    Subspace space;
  };
  std::vector<Piece> pieces{{{}, r.last_term}};
  for (const auto& a : r.acting) {
    std::vector<Piece> next;
    for (const auto& piece : pieces) {
      const Matrix ad = restricted_ad(g, a, piece.space);
      Polynomial chi = characteristic_polynomial(ad);
      const auto roots = rational_roots(chi);
      Polynomial residual = chi;
      for (const auto& root : roots) {
        const int mult = root_multiplicity(residual, root);
        for (int i = 0; i < mult; ++i)
          residual = divmod(residual, Polynomial::linear_factor(root)).first;
      }
      r.non_rational_roots += residual.degree();
      r.irrational_real_roots += count_distinct_real_roots(residual);
      for (const auto& root : roots) {
        Matrix shifted = ad;
        for (int i = 0; i < shifted.rows(); ++i) shifted(i, i) -= root;
        std::vector<Vector> vecs;
        for (const auto& coords : nullspace(shifted)) {
          Vector v(g.dim());
          for (int i = 1; i <= coords.dim(); ++i)
            v += coords[i] * piece.space.basis()[static_cast<std::size_t>(i - 1)];
          vecs.push_back(std::move(v));
        }
        Piece p{piece.values, Subspace::span(vecs, g.dim())};
        p.values.push_back(root);
        next.push_back(std::move(p));
      }
    }
    pieces = std::move(next);
  }
  for (auto& p : pieces)
    if (!p.space.is_zero()) r.lines.push_back({std::move(p.values), std::move(p.space)});
  return r;
}

/// The same algebra written in the frame f_i = Σ_j M(i,j) e_j. A vector X
/// has coordinates M·X in the new frame.
inline LieAlgebra change_frame(const LieAlgebra& g, const Matrix& m) {
  const auto inv = inverse(m);
  if (!inv) throw PreconditionError("change_frame: matrix is singular");
  const int n = g.dim();
  std::vector<KForm> d;
  for (int i = 0; i < n; ++i) {
    KForm df(n, 2);
    for (int j = 0; j < n; ++j)
      if (m(i, j) != 0) df += m(i, j) * g.d(j + 1);
    d.push_back(pullback(df, *inv));
  }
  return LieAlgebra(std::move(d));
}

}  // namespace lieshear
