// Conductor of the 2-dimensional irreducible of Q8 along Q8 > {±1} > 1, the
// symplectic tensor bound it attains, and the same character as a Weil–Deligne block.

#include <iostream>

#include "wdcond/filtration_conductor.hpp"
#include "wdcond/weil_deligne.hpp"

int main() {
  using namespace wdcond;
  const GroupPtr q8 = shared_group(GroupSpec::quaternion8());
  const auto table = character_table(q8);
  const Character chi2 = (*table)[4];
  const Filtration f = make_filtration(q8, {whole_group(q8), center(q8)});

  const auto report = conductor(chi2, f);
  std::cout << "a_i:";
  for (auto x : report.a_i) std::cout << ' ' << x;
  std::cout << "\na(chi2) = " << to_display_string(report.total) << '\n';

  const auto s = bound_symplectic(chi2, chi2, f);
  std::cout << "a(chi2 (x) chi2) = " << to_display_string(s.lhs) << " <= " << to_display_string(s.rhs) << '\n';

  const auto model = make_model(f, 2);
  const WDRep rho(model, {{chi2, 1}, {Character::trivial(q8), 2}});
  std::cout << "rho = chi2 + sp(2): a = " << to_display_string(artin_conductor(rho))
            << ", Sw = " << to_display_string(swan_conductor(rho)) << ", deg = " << degree(rho) << '\n';
}
