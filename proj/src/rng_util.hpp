#pragma once

// Internal RNG plumbing.  Sampling must reproduce bit-for-bit across
// platforms and standard libraries, so gaussians come from an explicit
// Box-Muller transform over raw mt19937_64 output instead of
// std::normal_distribution (whose algorithm is implementation-defined).

#include <cmath>
#include <cstdint>
#include <random>

namespace puretomo {

// Standard splitmix64 step; used to decorrelate user seeds and to derive
// per-worker substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

class GaussianRng {
  public:
    explicit GaussianRng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    // Uniform in (0,1]: 53-bit mantissa, never exactly zero.
    double uniform() {
        return static_cast<double>((eng_() >> 11) + 1ull) * 0x1.0p-53;
    }

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform();
        const double v = uniform();
        const double rad = std::sqrt(-2.0 * std::log(u));
        const double ang = 2.0 * 3.141592653589793238462643383279502884 * v;
        spare_ = rad * std::sin(ang);
        have_spare_ = true;
        return rad * std::cos(ang);
    }

    std::mt19937_64& engine() { return eng_; }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace puretomo
