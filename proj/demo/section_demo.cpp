// Builds A2, the shifted family, and the chart on Hess; then sends a point of
// Hess through Phi and back.
#include "mfhess/mfhess.hpp"

#include <iostream>

using namespace mfhess;

static void print(const char *name, const Vec &v)
{
  std::cout << name << " = (";
  for (std::size_t i = 0; i < v.size(); ++i)
    std::cout << (i ? ", " : "") << format_rational_short(v[i]);
  std::cout << ")\n";
}

int main()
{
  LieAlgebra L = chevalley_algebra(build_root_system(cartan_from_label("A2")));
  GradientContext ctx(L);
  InvariantFamily inv = invariant_generators(ctx);
  for (std::size_t j = 0; j < inv.generators.size(); ++j)
    std::cout << "I" << j + 1 << " = " << to_string(inv.generators[j]) << "\n";

  PrincipalTriple t = principal_triple(L);
  Vec y = choose_regular_y(L, 42);
  ShiftFamily F = shift_family(L, inv, y);
  HessChart chart = build_chart(ctx, t, F);
  print("y", y);
  print("e1", t.e1);

  Vec v = t.e1;
  v[L.cartan_index(0)] = Rational(1, 2);
  v[L.neg_index(2)] = 3;
  Vec c = phi(F, v);
  print("v", v);
  print("Phi(v)", c);
  print("section(Phi(v))", hess_section(chart, c));
  std::cout << "strongly regular: " << (is_strongly_regular(ctx, F, v) ? "yes" : "no") << "\n";
  std::cout << "transversal: " << (transversality_check(ctx, F, v).ok() ? "yes" : "no") << "\n";
}
