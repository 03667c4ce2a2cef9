#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lieshear/error.hpp"
#include "lieshear/exterior.hpp"
#include "lieshear/geometry.hpp"
#include "lieshear/lie_algebra.hpp"
#include "lieshear/shear.hpp"

namespace lieshear {

/// Bounded search space for the deformation form F0.
struct SearchSpec {
  LieAlgebra base;
  Vector x;
  KForm alpha;
  Rational a = -1;
  std::vector<Rational> coefficients{-1, 0, 1};
  std::optional<std::vector<KForm>> support;  // empty: Λ²W, W = Ann(X)
  int max_terms = 1;
  std::vector<KForm> preserve;  // closed forms that must stay closed
  std::uint64_t cap = 1'000'000;
};

struct SearchHit {
  KForm f0;
  ShearReport report;
  LieAlgebra algebra;
};

/// Wedges of pairs from the echelon basis of W = Ann(X). For X = E_k these
/// are the monomials e_ij with i, j ≠ k.
inline std::vector<KForm> default_support(const Vector& x) {
  const std::vector<Vector> xs{x};
  const auto w = Subspace::span(xs, x.dim()).annihilator().basis();
  std::vector<KForm> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      out.push_back(wedge(KForm::covector(w[i]), KForm::covector(w[j])));
  return out;
}

namespace detail {

struct PreparedSearch {
  std::vector<KForm> support;
  std::vector<Rational> nonzero;  // ascending
};

inline PreparedSearch prepare_search(const SearchSpec& spec) {
  const int n = spec.base.dim();
  if (spec.x.dim() != n || spec.alpha.dim() != n || spec.alpha.degree() != 1)
    throw DimensionError("search: X and alpha must live on the base algebra");
  if (spec.max_terms < 0) throw PreconditionError("search: max-terms must be non-negative");
  if (spec.a == 0) throw PreconditionError("search: a must be nonzero");
  if (std::find(spec.coefficients.begin(), spec.coefficients.end(), Rational(0)) == spec.coefficients.end())
    throw PreconditionError("search: the coefficient set must contain 0");
  require_jacobi(spec.base, "search");

  PreparedSearch p;
  for (const auto& c : spec.coefficients)
    if (c != 0) p.nonzero.push_back(c);
  std::sort(p.nonzero.begin(), p.nonzero.end());
  p.nonzero.erase(std::unique(p.nonzero.begin(), p.nonzero.end()), p.nonzero.end());

  p.support = spec.support ? *spec.support : default_support(spec.x);
  const bool monomial_only = std::all_of(p.support.begin(), p.support.end(),
                                         [](const KForm& f) { return f.size() == 1; });
  std::vector<Vector> rows;
  for (const auto& f : p.support) {
    if (f.dim() != n || f.degree() != 2) throw DimensionError("search: support entries must be 2-forms");
    if (f.is_zero()) throw PreconditionError("search: zero form in the support");
    const Matrix m = two_form_matrix(f);
    Vector v(n * (n - 1) / 2);
    int slot = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) v[++slot] = m(i, j);
    rows.push_back(std::move(v));
  }
  if (rank(Matrix::from_rows(rows, n * (n - 1) / 2)) != static_cast<int>(rows.size()))
    throw PreconditionError("search: support forms are linearly dependent");
  if (monomial_only)
    std::sort(p.support.begin(), p.support.end(), [](const KForm& l, const KForm& r) {
      return MonomialLess{}(l.terms().begin()->first, r.terms().begin()->first);
    });

  for (const auto& s : spec.preserve) {
    if (s.dim() != n) throw DimensionError("search: preserved form has the wrong dimension");
    if (!is_closed(spec.base, s))
      throw PreconditionError("search: preserved form " + format_form(s) + " is not closed");
  }
  return p;
}

inline Integer binomial(std::size_t m, std::size_t k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), m, k);
  return r;
}

/// Calls visit(indices, coefficients) for every candidate in canonical order.
template <typename Visit>
void for_each_candidate(std::size_t m, const std::vector<Rational>& nonzero, int max_terms, Visit&& visit) {
  const std::size_t top =
      nonzero.empty() ? 0 : std::min<std::size_t>(m, static_cast<std::size_t>(max_terms));
  for (std::size_t k = 0; k <= top; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<std::size_t> choice(k, 0);
      while (true) {
        visit(idx, choice);
        // next coefficient tuple, last position fastest
        std::size_t p = k;
        while (p > 0 && choice[p - 1] + 1 == nonzero.size()) choice[--p] = 0;
        if (p == 0) break;
        ++choice[p - 1];
      }
      // next k-combination of 0..m-1
      std::size_t p = k;
      while (p > 0 && idx[p - 1] == m - k + (p - 1)) --p;
      if (p == 0) break;
      ++idx[p - 1];
      for (std::size_t i = p; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
}

}  // namespace detail

/// Number of candidates the search would visit.
inline Integer search_space_size(const SearchSpec& spec) {
  const auto p = detail::prepare_search(spec);
  const std::size_t m = p.support.size();
  const std::size_t top =
      p.nonzero.empty() ? 0 : std::min<std::size_t>(m, static_cast<std::size_t>(spec.max_terms));
  Integer total = 0;
  for (std::size_t k = 0; k <= top; ++k) {
    Integer powc = 1;
    for (std::size_t i = 0; i < k; ++i) powc *= static_cast<unsigned long>(p.nonzero.size());
    total += detail::binomial(m, k) * powc;
  }
  return total;
}

/// Exhaustive enumeration. Results come out ordered by term count, then by
/// support position, then by coefficients (ascending).
inline std::vector<SearchHit> enumerate_F0(const SearchSpec& spec) {
  const auto p = detail::prepare_search(spec);
  const Integer size = search_space_size(spec);
  if (size > Integer(std::to_string(spec.cap)))
    throw SearchCapError("search space of " + size.get_str() + " candidates exceeds the cap of " +
                             std::to_string(spec.cap),
                         size.fits_ulong_p() ? static_cast<std::size_t>(size.get_ui()) : SIZE_MAX);
  const int n = spec.base.dim();
  std::vector<SearchHit> hits;
  detail::for_each_candidate(
      p.support.size(), p.nonzero, spec.max_terms,
      [&](const std::vector<std::size_t>& idx, const std::vector<std::size_t>& choice) {
        KForm f0(n, 2);
        for (std::size_t i = 0; i < idx.size(); ++i) f0 += p.nonzero[choice[i]] * p.support[idx[i]];
        ShearData data{spec.x, spec.alpha, f0, spec.a, std::nullopt};
        ShearReport report = validate_shear(spec.base, data);
        if (!report.valid) return;
        for (const auto& s : spec.preserve)
          if (!preserves_closure(spec.x, f0, s)) return;
        LieAlgebra algebra = construct_shear(spec.base, data);
        if (!jacobi_check(algebra).passed)
          throw Error("internal error: validated candidate " + format_form(f0) + " fails Jacobi");
        hits.push_back({std::move(f0), std::move(report), std::move(algebra)});
      });
  return hits;
}

}  // namespace lieshear
