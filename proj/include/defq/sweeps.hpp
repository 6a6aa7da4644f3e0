// Randomized and fixture-based property suites. Each suite runs a family of
// exact checks and reports how many samples passed; the acceptance binary
// and the command-line tool's --sweep mode share them.
#ifndef DEFQ_SWEEPS_HPP
#define DEFQ_SWEEPS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace defq {

struct SweepCheck {
  std::string name;
  long samples = 0;
  long passed = 0;
  std::string first_failure;  // description of the first failing sample
  bool ok() const { return passed == samples; }
};

struct SweepReport {
  std::string suite;
  std::vector<SweepCheck> checks;
  bool ok() const;
  // record one sample of the named check
  void record(const std::string& check, bool pass, const std::string& what = "");
};

// axioms of the reference DGLAs; corrupted presentations fail with witnesses
SweepReport sweep_dgla_fixtures();
// Hochschild DGLAs of k[x]/(x^3) and M2; [m, m] = 0 iff associative on random tables
SweepReport sweep_hochschild(std::uint64_t seed, int tables);
// Maurer-Cartan iff associative for first-order deformations of k[x]/(x^3)
SweepReport sweep_mc_associativity(std::uint64_t seed, int samples);
// gauge action maps Maurer-Cartan elements to Maurer-Cartan elements
SweepReport sweep_gauge(std::uint64_t seed, int samples);
// exact descent data verify, perturbed ones fail at the perturbed order
SweepReport sweep_descent(std::uint64_t seed, int samples);
// closedness of descent, iso and two-iso deviations on near-descent data
SweepReport sweep_deviation(std::uint64_t seed, int samples);
// Sullivan d, compatibility of Tot families, the degree-0 flat count and the
// square of the curved differential on random collections
SweepReport sweep_totalization(std::uint64_t seed, int collections);
// random gerbes validate and perturbed ones fail with a four-index witness
SweepReport sweep_stack(std::uint64_t seed, int samples);
// twisted matrices associative iff the datum is a stack datum; local cochains closed
SweepReport sweep_twisted(std::uint64_t seed, int stacks, int cochains);
// reconstruction from coherent chain data and the round trip
SweepReport sweep_barycentric(std::uint64_t seed, int samples);
// flatness, the leading class and equivalence moves at n = 1, N = 3, D = 6
SweepReport sweep_fedosov(std::uint64_t seed, int samples);
// generator commutators and associativity on the monomial basis
SweepReport sweep_moyal(std::uint64_t seed);
// random seeded pairs have central closed classes
SweepReport sweep_char_class(std::uint64_t seed, int samples);
// contraction and pairing against loop oracles
SweepReport sweep_rw(std::uint64_t seed, int samples);

}  // namespace defq

#endif
