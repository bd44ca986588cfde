// Hides 16 random permutations in a 64-column database, builds an exact-pairs
// sketch at eps/8, and reads the permutations back using only sketch queries.

#include <iostream>

#include "ifi/ifi.hpp"

int main() {
  const std::size_t d = 64;
  const ifi::Rational eps(1, 4);
  const auto layout = ifi::block_layout(d, eps);

  const auto perms = ifi::random_permutations(layout, 2);
  const auto inst = ifi::gen_general_instance(d, eps, perms, 200, 2);
  const auto gap = ifi::verify_gap(inst);
  std::cout << "rows " << inst.n << ", gap " << (gap.pass ? "ok" : "FAILED") << " (unmatched min "
            << gap.unmatched_min.value() << " vs threshold " << gap.threshold << ")\n";

  const auto blob = ifi::build_exact_pairs(inst.db, {eps.scaled(1, 8), 2, d});
  const ifi::SketchOracle oracle(blob);
  const auto decoded = ifi::decode_general(oracle, d, eps);

  std::cout << "sketch " << ifi::sketch_size_bits(blob) << " bits, hidden "
            << ifi::entropy_bits(d, eps) << " bits, recovered " << (decoded == perms ? "all" : "NOT all")
            << " " << perms.entries().size() << " permutations\n";
  return decoded == perms ? 0 : 1;
}
