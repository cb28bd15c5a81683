#include <sni/random.hpp>

#include <random>

namespace sni {

Matrix seeded_gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix a(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      a(i, j) = dist(gen);
    }
  }
  return a;
}

}  // namespace sni
