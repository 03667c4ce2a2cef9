// Shears the five-dimensional solvable algebra (51,52,53,2.54,0) along E4
// and checks the result.

#include <iostream>

#include "lieshear/lieshear.hpp"

int main() {
  using namespace lieshear;
  const LieAlgebra s = parse_salamon("(51,52,53,2.54,0)");

  ShearData data;
  data.x = parse_vector("E4", 5);
  data.alpha = parse_form("e4", 5, 1);
  data.f0 = parse_form("e13", 5, 2);

  const ShearReport report = validate_shear(s, data);
  for (const auto& c : report.conditions)
    std::cout << (c.passed ? "  ok   " : "  FAIL ") << c.name << "\n";
  if (!report.valid) return 1;

  const LieAlgebra sheared = construct_shear(s, data);
  std::cout << print_salamon(s) << " -> " << print_salamon(sheared) << "\n";
  std::cout << "jacobi: " << (jacobi_check(sheared).passed ? "pass" : "fail") << "\n";

  // which single-term F0 on Λ²Ann(E4) give valid shears?
  SearchSpec spec;
  spec.base = s;
  spec.x = data.x;
  spec.alpha = data.alpha;
  for (const auto& hit : enumerate_F0(spec))
    std::cout << "  F0 = " << format_form(hit.f0) << "  gives " << print_salamon(hit.algebra) << "\n";
}
