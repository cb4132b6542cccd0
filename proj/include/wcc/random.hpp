// random.hpp: reproducible random matrices and states.
//
// std:: distributions are implementation-defined, so uniforms and normals are
// derived from the raw SplitMix64 stream by hand; a given seed produces the
// same numbers on every platform.

#pragma once

#include "wcc/matrix.hpp"
#include "wcc/state.hpp"

#include <cstddef>
#include <cstdint>

namespace wcc {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double uniform();                     // [0, 1), 53 random bits
    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);
    double normal();                      // Box-Muller
    std::size_t index(std::size_t n);     // uniform in [0, n)

private:
    std::uint64_t state_;
};

// Independent stream for work item i of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i);

ComplexMatrix random_complex_gaussian(SplitMix64& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(SplitMix64& rng, std::size_t d, double scale = 1.0);
ComplexMatrix random_unitary(SplitMix64& rng, std::size_t d);
// Full-rank Ginibre state A A^dag / tr(A A^dag).
DensityMatrix random_density_matrix(SplitMix64& rng, std::size_t d);
// Hermitian, zero diagonal in the eigenbasis of h, unit spectral norm.
ComplexMatrix random_zero_diagonal(SplitMix64& rng, const ComplexMatrix& h);
// Hermitian and traceless, max entry 1.
ComplexMatrix random_traceless(SplitMix64& rng, std::size_t d);

} // namespace wcc
