#pragma once

#include "msd/matrix.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>

namespace msd {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Folds (seed, tags...) into one 64-bit seed; distinct tag lists give independent streams.
std::uint64_t stream_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags)
        : engine_(stream_seed(seed, tags)) {}

    double gauss() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }  // [0, 1)
    Mat gauss_matrix(Eigen::Index rows, Eigen::Index cols);
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace msd
