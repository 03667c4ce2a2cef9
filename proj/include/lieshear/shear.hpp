#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lieshear/error.hpp"
#include "lieshear/exterior.hpp"
#include "lieshear/lie_algebra.hpp"
#include "lieshear/notation.hpp"

namespace lieshear {

/// Data of one shear: the generator X of the ideal ξ, a 1-form α with
/// α(X) = 1, the deformation 2-form F0 and the nonzero transfer constant a.
/// eta_g is the optional closed 1-form with dF0 = eta_g ∧ F0 used by the
/// automorphic test.
struct ShearData {
  Vector x;
  KForm alpha;
  KForm f0;
  Rational a = -1;
  std::optional<KForm> eta_g;

  /// The deformation actually added to dα: F_eff = -a⁻¹·F0 (= F0 for a = -1).
  KForm f_eff() const { return Rational(-1 / a) * f0; }
};

/// dα = eta_str ∧ α + F_str with both parts annihilating X.
struct DecompResult {
  KForm eta_str;
  KForm f_str;
};

struct Condition {
  std::string name;
  bool passed = false;
  bool required = true;
  KForm residual;  // the form that must vanish
};

struct ShearReport {
  bool valid = false;
  DecompResult decomposition;
  KForm f_eff;
  KForm eta_prime;  // -X⌟F_eff
  KForm eta_0;      // eta_str - X⌟F_eff
  KForm eta_tilde;  // eta_str + eta_prime
  KForm f_prime;    // F_eff - eta_prime ∧ α
  KForm f_tilde;    // F_str + F_prime
  KForm nu;         // X⌟F0
  std::vector<Condition> conditions;
};

class InvalidShearError : public Error {
 public:
  explicit InvalidShearError(ShearReport report)
      : Error("invalid shear data: " + failed_conditions(report)), report_(std::move(report)) {}
  const ShearReport& report() const noexcept { return report_; }

 private:
  static std::string failed_conditions(const ShearReport& r) {
    std::string s;
    for (const auto& c : r.conditions)
      if (c.required && !c.passed) s += (s.empty() ? "" : "; ") + c.name;
    return s;
  }
  ShearReport report_;
};

namespace detail {

inline void check_shear_data(const LieAlgebra& g, const ShearData& d) {
  const int n = g.dim();
  if (d.x.dim() != n || d.alpha.dim() != n || d.f0.dim() != n)
    throw DimensionError("shear data dimension differs from the algebra");
  if (d.alpha.degree() != 1) throw DimensionError("alpha must be a 1-form");
  if (d.f0.degree() != 2) throw DimensionError("F0 must be a 2-form");
  if (d.a == 0) throw PreconditionError("the transfer constant a must be nonzero");
  if (d.eta_g && (d.eta_g->dim() != n || d.eta_g->degree() != 1))
    throw DimensionError("eta_g must be a 1-form on the algebra");
}

}  // namespace detail

/// Throws PreconditionError naming a covector w ∈ W = Ann(X) with X⌟dw ≠ 0.
inline void require_ideal(const LieAlgebra& g, const Vector& x) {
  const std::vector<Vector> xs{x};
  const Subspace w_space = Subspace::span(xs, g.dim()).annihilator();
  for (const auto& w : w_space.basis()) {
    const KForm cov = KForm::covector(w);
    const KForm c = interior(x, d_extend(g, cov));
    if (!c.is_zero())
      throw PreconditionError("span{" + format_vector(x) + "} is not an ideal: X⌟d(" +
                              format_form(cov) + ") = " + format_form(c));
  }
}

inline DecompResult decompose_dalpha(const LieAlgebra& g, const Vector& x, const KForm& alpha) {
  if (x.dim() != g.dim() || alpha.dim() != g.dim() || alpha.degree() != 1)
    throw DimensionError("decompose_dalpha: X and alpha must live on the algebra");
  const Rational ax = evaluate(alpha, x);
  if (ax != 1) throw PreconditionError("alpha(X) = " + to_string(ax) + ", expected 1");
  require_ideal(g, x);
  const KForm da = d_extend(g, alpha);
  KForm eta = -interior(x, da);
  KForm f = da - wedge(eta, alpha);
  return {std::move(eta), std::move(f)};
}

/// Evaluates every shear condition; all are computed even after a failure.
inline ShearReport validate_shear(const LieAlgebra& g, const ShearData& d) {
  detail::check_shear_data(g, d);
  const int n = g.dim();
  ShearReport r;
  r.decomposition = decompose_dalpha(g, d.x, d.alpha);
  r.f_eff = d.f_eff();
  r.eta_prime = -interior(d.x, r.f_eff);
  r.eta_0 = r.decomposition.eta_str + r.eta_prime;
  r.eta_tilde = r.eta_0;
  r.f_prime = r.f_eff - wedge(r.eta_prime, d.alpha);
  r.f_tilde = r.decomposition.f_str + r.f_prime;
  r.nu = interior(d.x, d.f0);

  auto add = [&](std::string name, KForm residual, bool required = true) {
    const bool ok = residual.is_zero();
    r.conditions.push_back({std::move(name), ok, required, std::move(residual)});
  };
  add("xi is an ideal", KForm(n, 2));
  add("dF_eff = eta_0 ^ F_eff", d_extend(g, r.f_eff) - wedge(r.eta_0, r.f_eff));
  add("d eta_0 = 0", d_extend(g, r.eta_0));
  add("eta_0(X) = 0", KForm::scalar(n, evaluate(r.eta_0, d.x)));
  const KForm dnu = d_extend(g, r.nu);
  add("dnu ^ nu = 0", wedge(dnu, r.nu));
  add("dnu = 0", dnu);
  if (d.eta_g) {
    add("d eta_g = 0", d_extend(g, *d.eta_g), false);
    add("eta_g(X) = 0", KForm::scalar(n, evaluate(*d.eta_g, d.x)), false);
    add("dF0 = eta_g ^ F0", d_extend(g, d.f0) - wedge(*d.eta_g, d.f0), false);
  }
  r.valid = true;
  for (const auto& c : r.conditions)
    if (c.required && !c.passed) r.valid = false;
  return r;
}

/// The candidate algebra without any validity check: on the same frame,
/// d_new e_i = de_i + e_i(X)·F_eff. For X = E_k this changes only de_k.
inline LieAlgebra construct_shear(const LieAlgebra& g, const ShearData& d) {
  detail::check_shear_data(g, d);
  const KForm feff = d.f_eff();
  std::vector<KForm> out;
  for (int i = 1; i <= g.dim(); ++i) {
    KForm di = g.d(i);
    if (d.x[i] != 0) di += d.x[i] * feff;
    out.push_back(std::move(di));
  }
  return LieAlgebra(std::move(out));
}

inline LieAlgebra apply_shear(const LieAlgebra& g, const ShearData& d) {
  ShearReport report = validate_shear(g, d);
  if (!report.valid) throw InvalidShearError(std::move(report));
  LieAlgebra out = construct_shear(g, d);
  if (!jacobi_check(out).passed)
    throw Error("internal error: a validated shear failed the Jacobi identity");
  return out;
}

/// d_S σ = dσ - a⁻¹·F0 ∧ (X⌟σ).
inline KForm ds_form(const LieAlgebra& g, const ShearData& d, const KForm& sigma) {
  detail::check_shear_data(g, d);
  if (sigma.dim() != g.dim()) throw DimensionError("ds_form: form and algebra dimensions differ");
  KForm out = d_extend(g, sigma);
  if (sigma.degree() > 0) out += wedge(d.f_eff(), interior(d.x, sigma));
  return out;
}

struct AutomorphicResult {
  bool automorphic = false;
  KForm gamma;  // a⁻¹·(X⌟F0) - eta_g
  KForm lhs;    // L_X σ
  KForm rhs;    // γ ∧ (X⌟σ)
};

/// Tests L_X σ = γ ∧ (X⌟σ) with γ = a⁻¹ν - η_g (constant a).
inline AutomorphicResult is_automorphic(const LieAlgebra& g, const ShearData& d, const KForm& sigma) {
  detail::check_shear_data(g, d);
  if (!d.eta_g) throw PreconditionError("is_automorphic needs eta_g in the shear data");
  AutomorphicResult r;
  r.gamma = Rational(1 / d.a) * interior(d.x, d.f0) - *d.eta_g;
  r.lhs = lie_derivative(g, d.x, sigma);
  r.rhs = sigma.degree() > 0 ? wedge(r.gamma, interior(d.x, sigma)) : KForm(g.dim(), 0);
  r.automorphic = r.lhs == r.rhs;
  return r;
}

/// Data undoing `d` when applied to the sheared algebra: F0 negated, same
/// X, α and a. eta_g refers to the original algebra and is dropped.
inline ShearData invert_shear(const LieAlgebra& g_sheared, const ShearData& d) {
  ShearData inv = d;
  inv.f0 = -d.f0;
  inv.eta_g.reset();
  ShearReport report = validate_shear(g_sheared, inv);
  if (!report.valid) throw InvalidShearError(std::move(report));
  return inv;
}

struct TwistResult {
  LieAlgebra algebra;
  ShearData data;  // the equivalent shear with a = -1
  Filtration filtration;
  Subspace admissible_v1;  // the V_1 that F was checked against
};

/// Highest-index basis covector outside V_1; the natural α for a twist.
inline KForm default_twist_alpha(const LieAlgebra& g) {
  const Filtration f = twist_filtration(g);
  const Subspace v1 = f.level(1);
  for (int k = g.dim(); k >= 1; --k) {
    const Vector ek = Vector::basis(g.dim(), k);
    if (!v1.contains(ek)) return KForm::covector(ek);
  }
  throw PreconditionError("no basis covector outside V_1");
}

/// Twist of a nilpotent algebra: keep d on W, set dβ = dα + F. X is the
/// first echelon basis vector of g^(r-1) (central) not killed by α, scaled
/// so α(X) = 1, and W = Ann(X). For Abelian input (r = 1) the minimal
/// filtration has V_1 = 0; W itself is used as V_1 since every flag is
/// admissible there.
inline TwistResult apply_twist(const LieAlgebra& g, const KForm& alpha, const KForm& f) {
  const int n = g.dim();
  if (alpha.dim() != n || alpha.degree() != 1) throw DimensionError("alpha must be a 1-form on the algebra");
  if (f.dim() != n || f.degree() != 2) throw DimensionError("F must be a 2-form on the algebra");
  TwistResult out;
  out.filtration = twist_filtration(g);
  const int r = out.filtration.step;
  const Subspace v1 = out.filtration.level(1);
  const Vector alpha_vec = alpha.as_vector();
  if (v1.contains(alpha_vec))
    throw PreconditionError("alpha = " + format_form(alpha) + " lies in V_1; need alpha in V_0 \\ V_1");

  const Subspace centre_source =
      r >= 2 ? series(g).lower_central[static_cast<std::size_t>(r - 2)] : Subspace::full(n);
  std::optional<Vector> x;
  for (const auto& b : centre_source.basis()) {
    const Rational ab = evaluate(alpha, b);
    if (ab != 0) {
      x = Rational(1 / ab) * b;
      break;
    }
  }
  if (!x) throw PreconditionError("alpha vanishes on g^(r-1)");
  const std::vector<Vector> xs{*x};
  const Subspace w = Subspace::span(xs, n).annihilator();
  out.admissible_v1 = r >= 2 ? v1 : w;

  if (!in_exterior_square(f, out.admissible_v1)) {
    std::string basis;
    for (const auto& b : out.admissible_v1.basis())
      basis += (basis.empty() ? "" : ", ") + format_form(KForm::covector(b));
    throw PreconditionError("F = " + format_form(f) + " is not in Λ²V_1 (V_1 = span{" + basis + "})");
  }
  const KForm df = d_extend(g, f);
  if (!df.is_zero()) throw PreconditionError("F is not closed: dF = " + format_form(df));

  // Direct construction: e_i = e_i(X)·α + w_i with w_i ∈ W.
  const KForm dbeta = d_extend(g, alpha) + f;
  std::vector<KForm> direct;
  for (int i = 1; i <= n; ++i) {
    const Rational c = (*x)[i];
    const KForm wi = KForm::basis(n, {i}) - c * alpha;
    direct.push_back(d_extend(g, wi) + c * dbeta);
  }
  out.algebra = LieAlgebra(std::move(direct));

  out.data = ShearData{*x, alpha, f, Rational(-1), std::nullopt};
  const ShearReport report = validate_shear(g, out.data);
  if (!report.decomposition.eta_str.is_zero() || !report.eta_prime.is_zero())
    throw Error("internal error: twist data has nonzero eta parts");
  if (!(apply_shear(g, out.data) == out.algebra))
    throw Error("internal error: twist and shear constructions disagree");
  return out;
}

}  // namespace lieshear
