#include <gtest/gtest.h>

#include <algorithm>
#include <tuple>

#include "support/corpus.hpp"

namespace {

using namespace lieshear;
using corpus::e;
using corpus::E;

SearchSpec s_spec() {
  SearchSpec spec;
  spec.base = corpus::solvable_s();
  spec.x = E(5, 4);
  spec.alpha = e(5, {4});
  return spec;
}

bool contains(const std::vector<SearchHit>& hits, const KForm& f) {
  return std::any_of(hits.begin(), hits.end(), [&](const SearchHit& h) { return h.f0 == f; });
}

TEST(Search, DefaultSupportIsLambdaTwoW) {
  const auto support = default_support(E(5, 4));
  ASSERT_EQ(support.size(), 6u);
  for (const auto& f : support) {
    EXPECT_EQ(f.size(), 1u);
    EXPECT_TRUE(interior(E(5, 4), f).is_zero());
  }
}

TEST(Search, FindsE13OnS) {
  SearchSpec spec = s_spec();
  spec.support = std::vector<KForm>{e(5, {1, 2}), e(5, {1, 3}), e(5, {1, 5}), e(5, {2, 3}), e(5, {2, 5}), e(5, {3, 5})};
  EXPECT_EQ(search_space_size(spec), 13);
  const auto hits = enumerate_F0(spec);
  EXPECT_TRUE(contains(hits, e(5, {1, 3})));
  ASSERT_FALSE(hits.empty());
  EXPECT_TRUE(hits.front().f0.is_zero());
  for (const auto& h : hits) {
    EXPECT_TRUE(h.report.valid);
    EXPECT_TRUE(jacobi_check(h.algebra).passed);
    EXPECT_EQ(h.algebra, corpus::oracle_shear(spec.base, spec.x, h.f0, spec.a));
  }
}

TEST(Search, FindsE23PreservingPsi) {
  SearchSpec spec;
  spec.base = corpus::g_lm(1, 2);
  spec.x = E(7, 1);
  spec.alpha = e(7, {1});
  spec.preserve = {corpus::psi()};
  const auto hits = enumerate_F0(spec);
  EXPECT_TRUE(contains(hits, e(7, {2, 3})));
  for (const auto& h : hits) EXPECT_TRUE(is_closed(h.algebra, corpus::psi()));
}

TEST(Search, ZeroCoefficientSetGivesIdentity) {
  SearchSpec spec = s_spec();
  spec.coefficients = {0};
  spec.max_terms = 3;
  const auto hits = enumerate_F0(spec);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_TRUE(hits[0].f0.is_zero());
  EXPECT_EQ(hits[0].algebra, spec.base);
}

TEST(Search, Errors) {
  SearchSpec spec = s_spec();
  spec.coefficients = {1, -1};
  EXPECT_THROW(enumerate_F0(spec), PreconditionError);
  spec = s_spec();
  spec.support = std::vector<KForm>{e(5, {1, 2}), Rational(2) * e(5, {1, 2})};
  EXPECT_THROW(enumerate_F0(spec), PreconditionError);
  spec = s_spec();
  spec.preserve = {e(5, {4})};
  EXPECT_THROW(enumerate_F0(spec), PreconditionError);
  spec = s_spec();
  spec.base = LieAlgebra({e(5, {2, 3}), KForm(5, 2), e(5, {4, 5}), KForm(5, 2), KForm(5, 2)});
  EXPECT_THROW(enumerate_F0(spec), JacobiError);
}

TEST(Search, CapRefusesLoudly) {
  SearchSpec spec = s_spec();
  spec.max_terms = 6;
  spec.coefficients = {-2, -1, 0, 1, 2};
  EXPECT_EQ(search_space_size(spec), 15625);  // 5^6
  spec.cap = 15624;
  try {
    enumerate_F0(spec);
    FAIL() << "expected SearchCapError";
  } catch (const SearchCapError& err) {
    EXPECT_EQ(err.candidates(), 15625u);
  }
  spec.cap = 15625;
  EXPECT_NO_THROW(enumerate_F0(spec));
}

using Key = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<Rational>>;

/// Every assignment of coefficients to the support, built and Jacobi-tested
/// without the shear or search code.
std::vector<KForm> oracle_search(const SearchSpec& spec, const std::vector<KForm>& support) {
  std::vector<Rational> coeffs = spec.coefficients;
  std::vector<std::pair<Key, KForm>> found;
  const std::size_t m = support.size();
  std::vector<std::size_t> digit(m, 0);
  while (true) {
    KForm f(spec.base.dim(), 2);
    std::vector<std::size_t> positions;
    std::vector<Rational> used;
    for (std::size_t i = 0; i < m; ++i)
      if (coeffs[digit[i]] != 0) {
        positions.push_back(i);
        used.push_back(coeffs[digit[i]]);
        f += coeffs[digit[i]] * support[i];
      }
    if (positions.size() <= static_cast<std::size_t>(spec.max_terms)) {
      const LieAlgebra g = corpus::oracle_shear(spec.base, spec.x, f, spec.a);
      bool keep = corpus::oracle_jacobi(g);
      for (const auto& s : spec.preserve) keep = keep && corpus::oracle_d(g, s).is_zero();
      if (keep) found.push_back({{positions.size(), positions, used}, f});
    }
    std::size_t p = 0;
    while (p < m && digit[p] + 1 == coeffs.size()) digit[p++] = 0;
    if (p == m) break;
    ++digit[p];
  }
  std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<KForm> out;
  for (auto& [k, f] : found) out.push_back(std::move(f));
  return out;
}

TEST(Search, MatchesBruteForceOracle) {
  corpus::Random r(51);
  int compared = 0;
  int nontrivial = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto c = corpus::random_ideal_case(r);
    if (c.g.dim() > 6) continue;
    SearchSpec spec;
    spec.base = c.g;
    spec.x = c.x;
    spec.alpha = corpus::random_alpha(r, c.x);
    spec.a = r.chance(0.5) ? Rational(-1) : Rational(2);
    spec.max_terms = r.uniform(1, 3);
    auto support = default_support(c.x);
    std::shuffle(support.begin(), support.end(), r.engine());
    support.resize(std::min<std::size_t>(support.size(), 4));
    std::sort(support.begin(), support.end(), [](const KForm& l, const KForm& rr) {
      return MonomialLess{}(l.terms().begin()->first, rr.terms().begin()->first);
    });
    spec.support = support;
    if (r.chance(0.3)) spec.preserve = {d_extend(c.g, r.form(c.g.dim(), 1))};
    std::vector<KForm> got;
    for (const auto& h : enumerate_F0(spec)) got.push_back(h.f0);
    EXPECT_EQ(got, oracle_search(spec, support)) << c.origin;
    ++compared;
    nontrivial += got.size() > 1;
  }
  EXPECT_GT(compared, 20);
  EXPECT_GT(nontrivial, 5);
}

TEST(Search, Deterministic) {
  SearchSpec spec = s_spec();
  spec.max_terms = 2;
  const auto a = enumerate_F0(spec);
  const auto b = enumerate_F0(spec);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(format_form(a[i].f0), format_form(b[i].f0));
    EXPECT_EQ(print_salamon(a[i].algebra), print_salamon(b[i].algebra));
  }
  // canonical order: term counts never decrease
  for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LE(a[i - 1].f0.size(), a[i].f0.size());
}

}  // namespace
