#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lieshear/error.hpp"
#include "lieshear/exterior.hpp"
#include "lieshear/lie_algebra.hpp"
#include "lieshear/linalg.hpp"
#include "lieshear/notation.hpp"

namespace lieshear {

/// Gram matrix of an inner product in the frame E_1..E_n.
struct Metric {
  Matrix gram;
  static Metric flat(int n) { return {Matrix::identity(n)}; }
};

/// Endomorphism of the frame with J(i, j) = e_i(J E_j), so columns are the
/// images of the basis vectors.
struct ComplexStructure {
  Matrix j;

  /// J E_{2k-1} = E_{2k}, J E_{2k} = -E_{2k-1}; the (1,0)-forms are
  /// e_{2k-1} + i e_{2k}.
  static ComplexStructure standard(int n) {
    if (n % 2) throw PreconditionError("a complex structure needs even dimension");
    Matrix m(n, n);
    for (int k = 0; k < n; k += 2) {
      m(k + 1, k) = 1;
      m(k, k + 1) = -1;
    }
    return {std::move(m)};
  }

  Vector operator()(const Vector& v) const { return j * v; }
};

/// e_12 + e_34 + ... + e_{n-1,n}.
inline KForm standard_symplectic_form(int n) {
  if (n % 2) throw PreconditionError("a symplectic form needs even dimension");
  KForm w(n, 2);
  for (int k = 1; k < n; k += 2) w += KForm::basis(n, {k, k + 1});
  return w;
}

/// One named pass/fail item of a structure report.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

inline bool is_closed(const LieAlgebra& g, const KForm& a) { return d_extend(g, a).is_zero(); }

namespace detail {

inline void require_square(const Matrix& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw DimensionError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

inline bool squares_to_minus_identity(const Matrix& j) {
  return j * j == Rational(-1) * Matrix::identity(j.rows());
}

inline void require_degree(const KForm& f, int n, int degree, const char* name) {
  if (f.dim() != n || f.degree() != degree)
    throw DimensionError(std::string(name) + " must be a " + std::to_string(degree) +
                         "-form on R^" + std::to_string(n));
}

}  // namespace detail

struct SymplecticReport {
  bool closed = false;
  bool nondegenerate = false;
  KForm top_power;  // ω^{n/2}
  bool passed() const { return closed && nondegenerate; }
};

inline SymplecticReport symplectic_check(const LieAlgebra& g, const KForm& omega) {
  const int n = g.dim();
  if (n % 2) throw PreconditionError("symplectic_check: odd dimension " + std::to_string(n));
  detail::require_degree(omega, n, 2, "omega");
  SymplecticReport r;
  r.closed = is_closed(g, omega);
  r.top_power = wedge_power(omega, n / 2);
  r.nondegenerate = !r.top_power.is_zero();
  return r;
}

struct NijenhuisEntry {
  int i;
  int j;
  Vector value;  // N(E_i, E_j)
};

struct NijenhuisReport {
  std::vector<NijenhuisEntry> nonzero;  // i < j with N(E_i, E_j) != 0
  bool integrable() const { return nonzero.empty(); }
};

/// N(v,w) = [Jv,Jw] - J[Jv,w] - J[v,Jw] - [v,w] on all basis pairs.
inline NijenhuisReport nijenhuis(const LieAlgebra& g, const ComplexStructure& cs) {
  const int n = g.dim();
  detail::require_square(cs.j, n, "J");
  if (!detail::squares_to_minus_identity(cs.j)) throw PreconditionError("J² ≠ -Id");
  NijenhuisReport r;
  for (int i = 1; i <= n; ++i)
    for (int k = i + 1; k <= n; ++k) {
      const Vector v = Vector::basis(n, i);
      const Vector w = Vector::basis(n, k);
      const Vector jv = cs(v);
      const Vector jw = cs(w);
      Vector value = bracket(g, jv, jw) - cs(bracket(g, jv, w)) - cs(bracket(g, v, jw)) -
                     bracket(g, v, w);
      if (!value.is_zero()) r.nonzero.push_back({i, k, std::move(value)});
    }
  return r;
}

/// Integrability tested on forms: for every (1,0)-form ζ = e_k - i·(e_k∘J)
/// the differential dζ must have no (0,2) part. Independent of `nijenhuis`.
inline bool integrable_by_forms(const LieAlgebra& g, const ComplexStructure& cs) {
  const int n = g.dim();
  detail::require_square(cs.j, n, "J");
  if (!detail::squares_to_minus_identity(cs.j)) throw PreconditionError("J² ≠ -Id");
  const Matrix& j = cs.j;
  const Matrix jt = j.transpose();
  for (int k = 1; k <= n; ++k) {
    const KForm theta = KForm::basis(n, {k});
    const KForm theta_j = KForm::covector(j.row(k - 1));
    // dζ = A + iB
    const Matrix a = two_form_matrix(d_extend(g, theta));
    const Matrix b = Rational(-1) * two_form_matrix(d_extend(g, theta_j));
    // ζ(Z̄1, Z̄2) = 0 for Z̄ = V + iJV, split into real and imaginary parts
    const Matrix re = a - jt * a * j - (b * j + jt * b);
    const Matrix im = b - jt * b * j + (a * j + jt * a);
    if (!re.is_zero() || !im.is_zero()) return false;
  }
  return true;
}

struct TypeComponents {
  KForm f11;        // ½(F + F(J·,J·))
  KForm f20_plus_02;  // ½(F - F(J·,J·))
};

inline TypeComponents type_components(const ComplexStructure& cs, const KForm& f) {
  if (f.degree() != 2) throw DimensionError("type_components expects a 2-form");
  detail::require_square(cs.j, f.dim(), "J");
  if (!detail::squares_to_minus_identity(cs.j)) throw PreconditionError("J² ≠ -Id");
  const KForm fj = pullback(f, cs.j);
  const Rational half(1, 2);
  return {half * (f + fj), half * (f - fj)};
}

struct StructureReport {
  std::string kind;
  bool passed = false;
  std::vector<Check> checks;  // gating items
  std::vector<Check> flags;   // reported only
};

namespace detail {

inline StructureReport finish(StructureReport r) {
  r.passed = true;
  for (const auto& c : r.checks)
    if (!c.passed) r.passed = false;
  return r;
}

}  // namespace detail

inline StructureReport kahler_check(const LieAlgebra& g, const Metric& m, const ComplexStructure& cs,
                                    const KForm& omega) {
  const int n = g.dim();
  if (n % 2) throw PreconditionError("kahler_check: odd dimension " + std::to_string(n));
  detail::require_square(m.gram, n, "metric");
  detail::require_square(cs.j, n, "J");
  detail::require_degree(omega, n, 2, "omega");
  StructureReport r{"kahler", false, {}, {}};
  const bool sym = m.gram.is_symmetric();
  const bool posdef = sym && definiteness(m.gram) == Definiteness::positive;
  r.checks.push_back({"metric positive definite", posdef, sym ? "" : "metric is not symmetric"});
  const bool jj = detail::squares_to_minus_identity(cs.j);
  r.checks.push_back({"J^2 = -Id", jj, ""});
  const Matrix jt = cs.j.transpose();
  r.checks.push_back({"g(J.,J.) = g", jt * m.gram * cs.j == m.gram, ""});
  r.checks.push_back({"omega = g(J.,.)", two_form_matrix(omega) == jt * m.gram, ""});
  const KForm dw = d_extend(g, omega);
  r.checks.push_back({"d omega = 0", dw.is_zero(), dw.is_zero() ? "" : format_form(dw)});
  if (jj) {
    const auto nj = nijenhuis(g, cs);
    std::string detail;
    for (const auto& e : nj.nonzero)
      detail += (detail.empty() ? "" : "; ") + std::string("N(E") + std::to_string(e.i) + ",E" +
                std::to_string(e.j) + ") = " + format_vector(e.value);
    r.checks.push_back({"Nijenhuis tensor vanishes", nj.integrable(), detail});
  } else {
    r.checks.push_back({"Nijenhuis tensor vanishes", false, "J is not a complex structure"});
  }
  return detail::finish(std::move(r));
}

/// Half-flat SU(3): d(ω∧ω) = 0 and dρ₋ = 0. ω∧ρ₋ = 0 is reported as a flag.
inline StructureReport half_flat_check(const LieAlgebra& g, const KForm& omega, const KForm& rho_minus) {
  if (g.dim() != 6) throw PreconditionError("half_flat_check needs dimension 6");
  detail::require_degree(omega, 6, 2, "omega");
  detail::require_degree(rho_minus, 6, 3, "rho_minus");
  StructureReport r{"half-flat", false, {}, {}};
  const KForm dw2 = d_extend(g, wedge(omega, omega));
  r.checks.push_back({"d(omega^2) = 0", dw2.is_zero(), dw2.is_zero() ? "" : format_form(dw2)});
  const KForm drho = d_extend(g, rho_minus);
  r.checks.push_back({"d rho_minus = 0", drho.is_zero(), drho.is_zero() ? "" : format_form(drho)});
  const KForm compat = wedge(omega, rho_minus);
  r.flags.push_back({"omega ^ rho_minus = 0", compat.is_zero(), compat.is_zero() ? "" : format_form(compat)});
  return detail::finish(std::move(r));
}

/// Co-calibrated G2: the 4-form ψ is closed. Positivity of ψ is not decided.
inline bool g2_cocal_check(const LieAlgebra& g, const KForm& psi) {
  if (g.dim() != 7) throw PreconditionError("g2_cocal_check needs dimension 7");
  detail::require_degree(psi, 7, 4, "psi");
  return is_closed(g, psi);
}

struct StabilityReport {
  Matrix b;  // B(E_i,E_j)·e_{1..7} = (E_i⌟φ)∧(E_j⌟φ)∧φ
  Definiteness definiteness = Definiteness::indefinite_or_degenerate;
  bool stable() const { return definiteness != Definiteness::indefinite_or_degenerate; }
};

inline StabilityReport phi_stability(int dim, const KForm& phi) {
  if (dim != 7) throw PreconditionError("phi_stability needs dimension 7");
  detail::require_degree(phi, 7, 3, "phi");
  const Monomial vol(static_cast<std::uint16_t>(0x7F));
  std::vector<KForm> contractions;
  for (int i = 1; i <= 7; ++i) contractions.push_back(interior(Vector::basis(7, i), phi));
  StabilityReport r;
  r.b = Matrix(7, 7);
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      const Rational v =
          wedge(wedge(contractions[static_cast<std::size_t>(i)], contractions[static_cast<std::size_t>(j)]), phi)
              .coeff(vol);
      r.b(i, j) = v;
      r.b(j, i) = v;
    }
  r.definiteness = definiteness(r.b);
  return r;
}

/// For a closed σ, the transferred form is closed after the shear with
/// (X, F0) iff F0 ∧ (X⌟σ) = 0.
inline bool preserves_closure(const Vector& x, const KForm& f0, const KForm& sigma) {
  if (x.dim() != f0.dim() || sigma.dim() != f0.dim())
    throw DimensionError("preserves_closure: dimension mismatch");
  if (sigma.degree() == 0) return true;
  return wedge(f0, interior(x, sigma)).is_zero();
}

enum class StructureKind { symplectic, kahler, half_flat, g2_cocal, g2_phi };

inline const char* kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::symplectic: return "symplectic";
    case StructureKind::kahler: return "kahler";
    case StructureKind::half_flat: return "half-flat";
    case StructureKind::g2_cocal: return "g2-cocal";
    case StructureKind::g2_phi: return "g2-phi";
  }
  return "?";
}

inline std::optional<StructureKind> parse_kind(const std::string& s) {
  for (auto k : {StructureKind::symplectic, StructureKind::kahler, StructureKind::half_flat,
                 StructureKind::g2_cocal, StructureKind::g2_phi})
    if (s == kind_name(k)) return k;
  return std::nullopt;
}

/// A named geometric structure. Forms are keyed "omega", "rho_minus", "psi", "phi".
struct StructureSpec {
  StructureKind kind = StructureKind::symplectic;
  std::map<std::string, KForm> forms;
  std::optional<Metric> metric;
  std::optional<ComplexStructure> complex_structure;

  const KForm& form(const std::string& name) const {
    auto it = forms.find(name);
    if (it == forms.end())
      throw PreconditionError(std::string("structure '") + kind_name(kind) + "' needs the form " + name);
    return it->second;
  }
};

inline StructureReport check_structure(const LieAlgebra& g, const StructureSpec& spec) {
  switch (spec.kind) {
    case StructureKind::symplectic: {
      const auto s = symplectic_check(g, spec.form("omega"));
      StructureReport r{"symplectic", false, {}, {}};
      r.checks.push_back({"d omega = 0", s.closed, ""});
      r.checks.push_back({"omega^(n/2) != 0", s.nondegenerate, format_form(s.top_power)});
      return detail::finish(std::move(r));
    }
    case StructureKind::kahler: {
      if (!spec.metric || !spec.complex_structure)
        throw PreconditionError("structure 'kahler' needs a metric and a complex structure");
      return kahler_check(g, *spec.metric, *spec.complex_structure, spec.form("omega"));
    }
    case StructureKind::half_flat:
      return half_flat_check(g, spec.form("omega"), spec.form("rho_minus"));
    case StructureKind::g2_cocal: {
      StructureReport r{"g2-cocal", false, {}, {}};
      const KForm& psi = spec.form("psi");
      const bool closed = g2_cocal_check(g, psi);
      r.checks.push_back({"d psi = 0", closed, closed ? "" : format_form(d_extend(g, psi))});
      return detail::finish(std::move(r));
    }
    case StructureKind::g2_phi: {
      StructureReport r{"g2-phi", false, {}, {}};
      const KForm& phi = spec.form("phi");
      if (g.dim() != 7) throw PreconditionError("g2-phi needs dimension 7");
      const auto st = phi_stability(7, phi);
      r.checks.push_back({"phi stable (B definite)", st.stable(),
                          st.definiteness == Definiteness::positive   ? "positive definite"
                          : st.definiteness == Definiteness::negative ? "negative definite"
                                                                      : "neither"});
      // ⋆φ in the orthonormal frame e_1..e_7
      const KForm psi = hodge_star(phi);
      const KForm dpsi = d_extend(g, psi);
      r.checks.push_back({"d(*phi) = 0 (orthonormal frame)", dpsi.is_zero(),
                          dpsi.is_zero() ? format_form(psi) : format_form(dpsi)});
      const KForm dphi = d_extend(g, phi);
      r.flags.push_back({"d phi = 0", dphi.is_zero(), dphi.is_zero() ? "" : format_form(dphi)});
      return detail::finish(std::move(r));
    }
  }
  throw Error("unknown structure kind");
}

}  // namespace lieshear
