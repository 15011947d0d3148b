#include "ptolemy/sampling.hpp"

#include <cmath>
#include <numbers>

namespace ptolemy {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view key) {
    std::uint64_t h = splitmix64(seed);
    for (unsigned char ch : key) h = splitmix64(h ^ ch);
    return h;
}

// Explicit transforms instead of std distributions: those are not specified
// bit-for-bit across standard libraries.
double uniform(Rng& rng, double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

double gaussian(Rng& rng) {
    double u1 = uniform(rng, 0.0, 1.0);
    double u2 = uniform(rng, 0.0, 1.0);
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace ptolemy
