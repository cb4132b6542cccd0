#include "wcc/random.hpp"

#include "wcc/error.hpp"
#include "wcc/spectral.hpp"

#include <cmath>
#include <numbers>

namespace wcc {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double SplitMix64::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double SplitMix64::normal() {
    double u1 = uniform();
    while (u1 <= 0.0) {
        u1 = uniform();
    }
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t SplitMix64::index(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "index range is empty");
    }
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t i) {
    SplitMix64 a(seed);
    const std::uint64_t base = a.next();
    SplitMix64 b(base ^ (i * 0xD1B54A32D192ED03ULL + 0x632BE59BD9B4E019ULL));
    return b.next();
}

ComplexMatrix random_complex_gaussian(SplitMix64& rng, std::size_t rows, std::size_t cols) {
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    // Fill row by row so the draw order does not depend on storage layout.
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            m(i, j) = Complex(re, im);
        }
    }
    return m;
}

ComplexMatrix random_hermitian(SplitMix64& rng, std::size_t d, double scale) {
    const ComplexMatrix a = random_complex_gaussian(rng, d, d);
    return (scale * 0.5) * (a + a.adjoint());
}

ComplexMatrix random_unitary(SplitMix64& rng, std::size_t d) {
    return hermitian_eig(random_hermitian(rng, d)).eigenvectors;
}

DensityMatrix random_density_matrix(SplitMix64& rng, std::size_t d) {
    const ComplexMatrix a = random_complex_gaussian(rng, d, d);
    ComplexMatrix rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(rho);
}

ComplexMatrix random_zero_diagonal(SplitMix64& rng, const ComplexMatrix& h) {
    const ComplexMatrix x = remove_energy_diagonal(random_hermitian(rng, static_cast<std::size_t>(h.rows())), h);
    const double n = hermitian_norm(x);
    return n > 0.0 ? ComplexMatrix(x / n) : x;
}

ComplexMatrix random_traceless(SplitMix64& rng, std::size_t d) {
    ComplexMatrix x = random_hermitian(rng, d);
    x -= (x.trace() / static_cast<double>(d)) * identity(d);
    return x / max_abs(x);
}

} // namespace wcc
