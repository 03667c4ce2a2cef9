#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lieshear/linalg.hpp"
#include "lieshear/rational.hpp"

namespace lieshear {

/// Univariate polynomial over Q, coefficients stored low degree first.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(const Rational& r) { return Polynomial({r}); }
  /// x - root
  static Polynomial linear_factor(const Rational& root) { return Polynomial({-root, 1}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
  }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> p(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) p[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(p));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Rational> p(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
    return Polynomial(std::move(p));
  }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial() - a; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: returns (quotient, remainder).
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem = num.c_;
    const int dd = den.degree();
    std::vector<Rational> quot(num.degree() >= dd ? static_cast<std::size_t>(num.degree() - dd + 1) : 0);
    for (int k = num.degree(); k >= dd; --k) {
      const Rational f = rem[static_cast<std::size_t>(k)] / den.leading();
      quot[static_cast<std::size_t>(k - dd)] = f;
      if (f == 0) continue;
      for (int j = 0; j <= dd; ++j)
        rem[static_cast<std::size_t>(k - dd + j)] -= f * den.c_[static_cast<std::size_t>(j)];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    std::vector<Rational> m = c_;
    const Rational lc = leading();
    for (auto& x : m) x /= lc;
    return Polynomial(std::move(m));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// det(t·I - M) by the Faddeev–LeVerrier recursion (exact over Q).
inline Polynomial characteristic_polynomial(const Matrix& m) {
  if (!m.is_square()) throw DimensionError("characteristic polynomial of non-square matrix");
  const int n = m.rows();
  std::vector<Rational> c(static_cast<std::size_t>(n + 1));
  c[static_cast<std::size_t>(n)] = 1;
  Matrix mk(n, n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    // M_k = M·M_{k-1} + c_{n-k+1}·I
    Matrix next = m * mk;
    for (int i = 0; i < n; ++i) next(i, i) += c[static_cast<std::size_t>(n - k + 1)];
    mk = std::move(next);
    Matrix am = m * mk;
    Rational trace = 0;
    for (int i = 0; i < n; ++i) trace += am(i, i);
    c[static_cast<std::size_t>(n - k)] = -trace / k;
  }
  return Polynomial(std::move(c));
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// Distinct rational roots, ascending, by the rational root theorem.
inline std::vector<Rational> rational_roots(const Polynomial& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  // Strip the factor t^k first so the constant term is nonzero.
  int low = 0;
  while (p.coeff(low) == 0) ++low;
  if (low > 0) roots.push_back(0);
  if (p.degree() == low) return roots;

  Integer lcm_den = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  for (int k = low; k <= p.degree(); ++k) {
    Rational scaled = p.coeff(k) * lcm_den;
    ints.push_back(scaled.get_num());
  }
  const auto ps = detail::positive_divisors(ints.front());
  const auto qs = detail::positive_divisors(ints.back());
  Polynomial reduced(std::vector<Rational>(p.coefficients().begin() + low, p.coefficients().end()));
  for (const auto& pd : ps)
    for (const auto& qd : qs)
      for (int s : {1, -1}) {
        Rational cand(pd * s, qd);
        cand.canonicalize();
        if (reduced(cand) == 0 &&
            std::find(roots.begin(), roots.end(), cand) == roots.end())
          roots.push_back(cand);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Number of distinct real roots (Sturm's theorem over the whole line).
inline int count_distinct_real_roots(const Polynomial& p) {
  if (p.degree() <= 0) return 0;
  std::vector<Polynomial> seq{p, p.derivative()};
  while (!seq.back().is_zero()) {
    auto r = divmod(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  auto sign_changes = [&](bool at_plus_infinity) {
    int changes = 0;
    int prev = 0;
    for (const auto& q : seq) {
      if (q.is_zero()) continue;
      int s = sgn(q.leading());
      if (!at_plus_infinity && q.degree() % 2 == 1) s = -s;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  };
  return sign_changes(false) - sign_changes(true);
}

/// Multiplicity of `root` in p.
inline int root_multiplicity(Polynomial p, const Rational& root) {
  int m = 0;
  const Polynomial f = Polynomial::linear_factor(root);
  while (!p.is_zero() && p(root) == 0) {
    p = divmod(p, f).first;
    ++m;
  }
  return m;
}

}  // namespace lieshear
