#include <gtest/gtest.h>

#include "support/corpus.hpp"

namespace {

using namespace lieshear;
using corpus::e;
using corpus::E;

ShearData data(const Vector& x, const KForm& alpha, const KForm& f0, Rational a = -1,
               std::optional<KForm> eta_g = std::nullopt) {
  return ShearData{x, alpha, f0, std::move(a), std::move(eta_g)};
}

const Condition& condition(const ShearReport& r, const std::string& name) {
  for (const auto& c : r.conditions)
    if (c.name == name) return c;
  throw std::runtime_error("no condition " + name);
}

TEST(Decompose, WorkedValues) {
  const auto s = decompose_dalpha(corpus::solvable_s(), E(5, 4), e(5, {4}));
  EXPECT_EQ(s.eta_str, e(5, {5}, 2));
  EXPECT_TRUE(s.f_str.is_zero());
  const auto g = decompose_dalpha(corpus::g_lm(1, 2), E(7, 1), e(7, {1}));
  EXPECT_EQ(g.eta_str, e(7, {7}, -3));
  EXPECT_TRUE(g.f_str.is_zero());
  const auto a = decompose_dalpha(LieAlgebra::abelian(6), E(6, 1), e(6, {1}));
  EXPECT_TRUE(a.eta_str.is_zero());
  EXPECT_TRUE(a.f_str.is_zero());
}

TEST(Decompose, Preconditions) {
  EXPECT_THROW(decompose_dalpha(corpus::solvable_s(), E(5, 4), e(5, {4}, 2)), PreconditionError);
  try {
    decompose_dalpha(corpus::heisenberg(), E(3, 1), e(3, {1}));
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& err) {
    EXPECT_NE(std::string(err.what()).find("not an ideal"), std::string::npos);
  }
  EXPECT_THROW(decompose_dalpha(corpus::heisenberg(), E(4, 1), e(3, {1})), DimensionError);
}

TEST(Decompose, ReconstructsOnRandomCorpus) {
  corpus::Random r(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = corpus::random_ideal_case(r);
    const KForm alpha = corpus::random_alpha(r, c.x);
    const auto d = decompose_dalpha(c.g, c.x, alpha);
    EXPECT_EQ(wedge(d.eta_str, alpha) + d.f_str, d_extend(c.g, alpha));
    EXPECT_EQ(evaluate(d.eta_str, c.x), 0);
    EXPECT_TRUE(interior(c.x, d.f_str).is_zero());
  }
}

TEST(Validate, WorkedValues) {
  const LieAlgebra s = corpus::solvable_s();
  const auto ok = validate_shear(s, data(E(5, 4), e(5, {4}), e(5, {1, 3})));
  EXPECT_TRUE(ok.valid);
  EXPECT_EQ(ok.eta_0, e(5, {5}, 2));
  EXPECT_TRUE(ok.nu.is_zero());

  const auto bad = validate_shear(s, data(E(5, 4), e(5, {4}), e(5, {1, 4})));
  EXPECT_FALSE(bad.valid);
  EXPECT_EQ(bad.eta_0, e(5, {5}, 2) + e(5, {1}));
  EXPECT_FALSE(condition(bad, "d eta_0 = 0").passed);
  EXPECT_EQ(condition(bad, "d eta_0 = 0").residual, KForm::basis(5, {5, 1}));
  EXPECT_EQ(bad.conditions.size(), 6u);  // all conditions evaluated

  const auto flat = validate_shear(LieAlgebra::abelian(6), data(E(6, 1), e(6, {1}), e(6, {1, 2})));
  EXPECT_TRUE(flat.valid);
  EXPECT_EQ(flat.eta_0, e(6, {2}, -1));
  EXPECT_EQ(flat.nu, e(6, {2}));
}

TEST(Validate, EtaGConditionsAreInformational) {
  const LieAlgebra g = corpus::g_lm(1, 2);
  const auto right = validate_shear(g, data(E(7, 1), e(7, {1}), e(7, {2, 3}), -1, e(7, {7}, -3)));
  EXPECT_TRUE(right.valid);
  EXPECT_TRUE(condition(right, "dF0 = eta_g ^ F0").passed);
  const auto wrong = validate_shear(g, data(E(7, 1), e(7, {1}), e(7, {2, 3}), -1, e(7, {7})));
  EXPECT_TRUE(wrong.valid);
  EXPECT_FALSE(condition(wrong, "dF0 = eta_g ^ F0").passed);
  EXPECT_FALSE(condition(wrong, "dF0 = eta_g ^ F0").required);
}

TEST(Validate, InputErrors) {
  const LieAlgebra s = corpus::solvable_s();
  EXPECT_THROW(validate_shear(s, data(E(5, 4), e(5, {4}), e(5, {1, 3}), 0)), PreconditionError);
  EXPECT_THROW(validate_shear(s, data(E(5, 4), e(5, {4}), e(5, {1}))), DimensionError);
  EXPECT_THROW(validate_shear(s, data(E(5, 4), e(5, {4, 5}), e(5, {1, 3}))), DimensionError);
  EXPECT_THROW(validate_shear(s, data(E(5, 4), e(5, {5}), e(5, {1, 3}))), PreconditionError);
}

TEST(Apply, WorkedValues) {
  const LieAlgebra s = corpus::solvable_s();
  const LieAlgebra r1 = apply_shear(s, data(E(5, 4), e(5, {4}), e(5, {1, 3})));
  EXPECT_EQ(print_salamon(r1), "(51,52,53,13+2.54,0)");
  const LieAlgebra r2 = apply_shear(s, data(E(5, 4), e(5, {4}), KForm::basis(5, {5, 4}, -2)));
  EXPECT_EQ(print_salamon(r2), "(51,52,53,0,0)");
  const LieAlgebra k = apply_shear(LieAlgebra::abelian(6), data(E(6, 1), e(6, {1}), e(6, {1, 2})));
  EXPECT_EQ(print_salamon(k), "(12,0,0,0,0,0)");
  const LieAlgebra kp = apply_shear(LieAlgebra::abelian(6), data(E(6, 1), e(6, {1}), e(6, {1, 2}), 1));
  EXPECT_EQ(kp.d(1), e(6, {1, 2}, -1));

  const LieAlgebra h = apply_shear(corpus::g_lm(1, 2), data(E(7, 1), e(7, {1}), e(7, {2, 3})));
  EXPECT_EQ(h, corpus::h_lm(1, 2));
  EXPECT_EQ(h, parse_salamon("(3.17+23,27,2.37,3.74,75,2.76,0)"));
}

TEST(Apply, InvalidThrowsWithReport) {
  try {
    apply_shear(corpus::solvable_s(), data(E(5, 4), e(5, {4}), e(5, {1, 4})));
    FAIL() << "expected InvalidShearError";
  } catch (const InvalidShearError& err) {
    EXPECT_FALSE(err.report().valid);
    EXPECT_NE(std::string(err.what()).find("d eta_0 = 0"), std::string::npos);
  }
}

TEST(Apply, IdentityForZeroF0) {
  const LieAlgebra s = corpus::solvable_s();
  EXPECT_EQ(apply_shear(s, data(E(5, 4), e(5, {4}), KForm(5, 2))), s);
}

TEST(Properties, ValidityEquivalentToJacobi) {
  corpus::Random r(32);
  int valid = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto c = corpus::random_shear_case(r);
    const bool v = validate_shear(c.g, c.data).valid;
    const LieAlgebra built = construct_shear(c.g, c.data);
    EXPECT_EQ(built, corpus::oracle_shear(c.g, c.data.x, c.data.f0, c.data.a));
    EXPECT_EQ(v, jacobi_check(built).passed) << c.origin << " F0 = " << format_form(c.data.f0);
    valid += v;
  }
  EXPECT_GT(valid, 50);
  EXPECT_LT(valid, 250);
}

TEST(Properties, ValidShearInvariants) {
  corpus::Random r(33);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 120; ++trial) {
    const auto c = corpus::random_shear_case(r);
    const auto report = validate_shear(c.g, c.data);
    if (!report.valid) continue;
    ++checked;
    const int n = c.g.dim();
    const LieAlgebra out = apply_shear(c.g, c.data);

    // W-differentials preserved
    const std::vector<Vector> xs{c.data.x};
    const Subspace w_space = Subspace::span(xs, n).annihilator();
    for (const auto& w : w_space.basis()) {
      const KForm cov = KForm::covector(w);
      EXPECT_EQ(d_extend(out, cov), d_extend(c.g, cov));
    }
    // d_S equals the new differential on generators and random forms
    for (int k = 1; k <= n; ++k) EXPECT_EQ(ds_form(c.g, c.data, e(n, {k})), out.d(k));
    const KForm a = r.form(n, r.uniform(0, 3));
    const KForm b = r.form(n, r.uniform(0, 3));
    EXPECT_EQ(ds_form(c.g, c.data, a), d_extend(out, a));
    EXPECT_TRUE(ds_form(c.g, c.data, ds_form(c.g, c.data, a)).is_zero());
    const Rational sign = a.degree() % 2 ? -1 : 1;
    EXPECT_EQ(ds_form(c.g, c.data, wedge(a, b)),
              wedge(ds_form(c.g, c.data, a), b) + sign * wedge(a, ds_form(c.g, c.data, b)));

    // round trip
    const ShearData inv = invert_shear(out, c.data);
    EXPECT_EQ(apply_shear(out, inv), c.g);
  }
  EXPECT_GE(checked, 100);
}

TEST(Twist, WorkedValues) {
  const auto down = apply_twist(corpus::heisenberg(), e(3, {3}), e(3, {1, 2}, -1));
  EXPECT_EQ(print_salamon(down.algebra), "(0,0,0)");
  EXPECT_EQ(down.data.x, E(3, 3));
  const auto up = apply_twist(LieAlgebra::abelian(3), e(3, {3}), e(3, {1, 2}));
  EXPECT_EQ(print_salamon(up.algebra), "(0,0,12)");
  try {
    apply_twist(corpus::heisenberg(), e(3, {3}), e(3, {1, 3}));
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& err) {
    EXPECT_NE(std::string(err.what()).find("V_1"), std::string::npos);
  }
  EXPECT_THROW(apply_twist(corpus::heisenberg(), e(3, {1}), e(3, {1, 2})), PreconditionError);
  EXPECT_THROW(apply_twist(corpus::solvable_s(), e(5, {5}), KForm(5, 2)), PreconditionError);
  EXPECT_EQ(default_twist_alpha(corpus::heisenberg()), e(3, {3}));
}

TEST(Twist, NotClosedRejected) {
  // step 3: V_1 = <e1,e2,e3,e5>, and e35 ∈ Λ²V_1 has d(e35) = e125
  const LieAlgebra g3 = parse_salamon("(0,0,12,13,0)");
  EXPECT_EQ(twist_filtration(g3).step, 3);
  EXPECT_THROW(apply_twist(g3, e(5, {4}), e(5, {3, 5})), PreconditionError);
  EXPECT_NO_THROW(apply_twist(parse_salamon("(0,0,0,0,12)"), e(5, {5}), e(5, {3, 4})));
}

TEST(Twist, RandomCoherence) {
  corpus::Random r(34);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 60; ++trial) {
    const LieAlgebra g = r.nilpotent(r.uniform(3, 6));
    const int n = g.dim();
    const KForm alpha = default_twist_alpha(g);
    const Filtration f = twist_filtration(g);
    const Subspace v1 = f.step >= 2 ? f.level(1) : Subspace::full(n);
    // random closed F in Λ²V_1 (or Λ²W for Abelian input)
    KForm cand(n, 2);
    const auto& b = v1.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (r.chance(0.3)) cand += r.nonzero(2) * wedge(KForm::covector(b[i]), KForm::covector(b[j]));
    if (!d_extend(g, cand).is_zero()) continue;
    TwistResult t;
    try {
      t = apply_twist(g, alpha, cand);
    } catch (const PreconditionError&) {
      continue;  // Abelian input with F touching α
    }
    ++done;
    EXPECT_TRUE(jacobi_check(t.algebra).passed);
    EXPECT_EQ(t.algebra, apply_shear(g, t.data));
    // the inverse twist returns to g
    const auto back = apply_shear(t.algebra, invert_shear(t.algebra, t.data));
    EXPECT_EQ(back, g);
  }
  EXPECT_GE(done, 40);
}

TEST(Ds, WorkedValues) {
  for (const Rational& a : {Rational(-1), Rational(1), Rational(3, 2)}) {
    EXPECT_TRUE(ds_form(LieAlgebra::abelian(6), data(E(6, 1), e(6, {1}), e(6, {1, 2}), a), corpus::omega6()).is_zero());
  }
  EXPECT_TRUE(ds_form(corpus::g_lm(1, 2), data(E(7, 1), e(7, {1}), e(7, {2, 3})), corpus::psi()).is_zero());
  const LieAlgebra s = corpus::solvable_s();
  const KForm sigma = e(5, {1, 5});  // E4⌟σ = 0
  EXPECT_EQ(ds_form(s, data(E(5, 4), e(5, {4}), e(5, {1, 3})), sigma), d_extend(s, sigma));
}

TEST(Automorphic, WorkedValues) {
  const LieAlgebra g = corpus::g_lm(1, 2);
  for (const Rational& a : {Rational(-1), Rational(2), Rational(-1, 5)}) {
    const auto r = is_automorphic(g, data(E(7, 1), e(7, {1}), e(7, {2, 3}), a, e(7, {7}, -3)), e(7, {1}));
    EXPECT_TRUE(r.automorphic);
    EXPECT_EQ(r.lhs, e(7, {7}, 3));
    EXPECT_EQ(r.rhs, e(7, {7}, 3));
    for (int i = 2; i <= 7; ++i)
      EXPECT_TRUE(is_automorphic(g, data(E(7, 1), e(7, {1}), e(7, {2, 3}), a, e(7, {7}, -3)), e(7, {i})).automorphic);
  }
  const auto no = is_automorphic(g, data(E(7, 1), e(7, {1}), e(7, {2, 3}), -1, KForm(7, 1)), e(7, {1}));
  EXPECT_FALSE(no.automorphic);
  EXPECT_THROW(is_automorphic(g, data(E(7, 1), e(7, {1}), e(7, {2, 3})), e(7, {1})), PreconditionError);
}

TEST(Automorphic, FormsAreClosedUnderWedgeAndDs) {
  // on g_{λ,μ} with the ψ-shear every generator is automorphic; products too
  const LieAlgebra g = corpus::g_lm(1, -1);
  const ShearData d = data(E(7, 1), e(7, {1}), e(7, {2, 3}), -1, KForm(7, 1));
  corpus::Random r(35);
  for (int trial = 0; trial < 30; ++trial) {
    const KForm a = r.form(7, r.uniform(1, 3));
    const KForm b = r.form(7, r.uniform(1, 3));
    if (!is_automorphic(g, d, a).automorphic || !is_automorphic(g, d, b).automorphic) continue;
    EXPECT_TRUE(is_automorphic(g, d, wedge(a, b)).automorphic);
  }
}

TEST(Invert, WorkedValues) {
  const LieAlgebra r = parse_salamon("(51,52,53,0,0)");
  const ShearData forward = data(E(5, 4), e(5, {4}), KForm::basis(5, {5, 4}, -2));
  const ShearData inv = invert_shear(r, forward);
  EXPECT_EQ(inv.f0, KForm::basis(5, {5, 4}, 2));
  EXPECT_EQ(print_salamon(apply_shear(r, inv)), "(51,52,53,2.54,0)");
  const ShearData zero = data(E(5, 4), e(5, {4}), KForm(5, 2));
  EXPECT_EQ(apply_shear(r, invert_shear(r, zero)), r);
  EXPECT_THROW(invert_shear(corpus::solvable_s(), data(E(5, 4), e(5, {4}), e(5, {1, 4}))), InvalidShearError);
}

}  // namespace
