/*!
  \file build_and_check.cpp
  \brief Builds a 16-bit multiplier, checks it and writes it out
*/

#include <iostream>

#include <mulsynth/mulsynth.hpp>

int main()
{
  using namespace mulsynth;

  auto const mb = build_auto( 16 );
  std::cout << format_trace( mb.trace ) << ": " << count_gates( mb.netlist ) << " gates\n";

  auto const v = random_equivalence( mb.netlist, 16, 10000, 1 );
  std::cout << ( v.passed ? "pass" : "FAIL" ) << ", " << v.cases << " cases\n";

  auto const text = export_text( mb.netlist );
  std::cout << text.substr( 0, text.find( '\n' ) ) << " (" << text.size() << " bytes)\n";
  return v.passed ? 0 : 1;
}
