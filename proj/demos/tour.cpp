// A short tour of the library: sample a member, certify it, take the
// decomposition apart and put it back together, then walk the pair/dyad
// bridge in both directions.

#include <cstdio>

#include "conez/conez.hpp"

int main() {
  using namespace conez;
  auto eng = rng::engine(2024);

  // A random member of the Z-operator cone, certified by the spectral oracle.
  const Matrix a = sample_z_lorentz(4, eng);
  const ZCertificate cert = z_oracle_lorentz(a);
  std::printf("sampled A (n=4): member=%d  gamma*=%.6f  slack=%.3e\n", cert.member,
              cert.gamma_star, cert.lambda_min_at_star);

  // Reassemble A = gamma*I - J*(P+Q) from its decomposition and measure the gap.
  const ZDecomposition dec = *cert.decomposition;
  const Matrix back = z_assemble(dec.gamma, dec.psd_part, dec.skew_part);
  std::printf("round trip residual: %.3e\n", (a - back).frobenius_norm());

  // Forward bridge: a complementary pair gives a dual member.
  const CompPair pr = sample_complementary_pair(4, eng);
  const Matrix dyad = dyad_from_pair(pr.x, pr.y);
  std::printf("dyad from a %s pair: dual member=%d\n", to_string(pr.cls),
              dual_oracle_lorentz(dyad).member);

  // Reverse bridge: factor the dyad back into a complementary pair.
  const auto [x, y] = dyad_factor(dyad);
  const PairCheck chk = complementarity_check(x, y);
  std::printf("factored pair: in C(L)=%d  <x,y>=%.3e\n", chk.in_c, chk.inner_product);
  return 0;
}
