#pragma once

#include <string>

#include "wittlab/endo.hpp"

namespace wittlab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  std::vector<long> primes{3, 5, 7};
  int digits = 32;
  bool quick = false;           // reduced sample counts for interactive runs
  unsigned long long seed = 1;  // randomized checks are deterministic per seed
};

// The declared verification grid of self-dual data over Q_p: the zero datum,
// both ramified quadratics, the unramified quadratic, both quartic
// uniformizer-root towers, and both mixed (2,2) towers, per prime.
std::vector<SelfDualContext> standard_grid(long p, int digits);

// Reference computations, independent of the closed-form implementations.
// A diagonal form is isotropic iff the residue search mod p^3 finds a
// certified primitive zero.
int diman_bruteforce(long p, const std::vector<std::pair<int, int>>& entries);
// Solubility search for z^2 = a x^2 + b y^2.
int hilbert_bruteforce(long p, int a_unit, int a_val, int b_unit, int b_val);

std::vector<CheckResult> run_selftest(const SelftestOptions& opt);

}  // namespace wittlab
