#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace condent {

// Seeded generator with platform-independent derived draws. The standard
// distributions are implementation-defined, so draws are built directly on
// the engine output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    // Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer on [0, n).
    std::size_t below(std::size_t n);
    // Uniform integer on [lo, hi].
    int between(int lo, int hi);

    // Random composition of `units` into `parts` nonnegative integers.
    std::vector<int> composition(int units, std::size_t parts);
    std::vector<std::size_t> permutation(std::size_t n);

    // Independent stream for sub-task `index`; depends only on the seed.
    Rng split(std::uint64_t index) const;

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace condent
