#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ptolemy {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Seed for an independent stream keyed by a name, so results do not depend on
// the order in which streams are consumed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view key);

double uniform(Rng& rng, double lo, double hi);
double gaussian(Rng& rng);

}  // namespace ptolemy
