#pragma once

#include <cstdint>

#include <sni/dense.hpp>

namespace sni {

/// Matrix with i.i.d. standard normal entries, filled column by column from
/// a mt19937_64 stream seeded with `seed`. Deterministic for a fixed seed.
Matrix seeded_gaussian(Index rows, Index cols, std::uint64_t seed);

}  // namespace sni
