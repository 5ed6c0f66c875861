// Hand-rolled generators shared by the property tests.
#pragma once

#include "tgit/integer.hpp"
#include "tgit/lattice.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tgit::testing {

class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    long long uniform(long long lo, long long hi) {
        return std::uniform_int_distribution<long long>(lo, hi)(engine_);
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform(0, static_cast<long long>(n) - 1)); }
    bool coin() { return uniform(0, 1) == 1; }

    IntVector vector(std::size_t n, long long lo, long long hi) {
        IntVector v(n);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    IntMatrix matrix(std::size_t rows, std::size_t cols, long long lo, long long hi) {
        IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(lo, hi);
        return m;
    }

    /// Product of random elementary operations: always unimodular.
    IntMatrix unimodular(std::size_t n, int steps = 12) {
        IntMatrix u = IntMatrix::identity(n);
        if (n == 0) return u;
        for (int s = 0; s < steps; ++s) {
            const std::size_t a = index(n);
            const std::size_t b = index(n);
            if (a == b) {
                if (coin()) u.negate_row(a);
                continue;
            }
            if (uniform(0, 3) == 0) u.swap_rows(a, b);
            else u.add_row_multiple(a, b, Integer(uniform(-2, 2)));
        }
        return u;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace tgit::testing
