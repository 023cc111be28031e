#pragma once

#include <cstdint>
#include <random>

namespace gmc {

std::uint64_t splitmix64(std::uint64_t x);

// Seed for replica `index` of stream `stream` under `master`:
//   splitmix64(splitmix64(master ^ splitmix64(stream)) + index)
// Depends only on its arguments, never on thread layout.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    double uniform(double a, double b) { return a + (b - a) * uniform_(engine_); }
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Stream tags keep seeds of different experiments disjoint.
namespace stream {
inline constexpr std::uint64_t field = 1;
inline constexpr std::uint64_t mass_moment = 2;
inline constexpr std::uint64_t x_moment = 3;
inline constexpr std::uint64_t log_phi = 4;
inline constexpr std::uint64_t zero_density = 5;
inline constexpr std::uint64_t seiberg = 6;
inline constexpr std::uint64_t multifractal = 7;
inline constexpr std::uint64_t mass_scaling = 8;
inline constexpr std::uint64_t imag_bound = 9;
inline constexpr std::uint64_t hypotheses = 10;
}  // namespace stream

}  // namespace gmc
