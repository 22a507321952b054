#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "partlab/flip_model.hpp"
#include "partlab/moments.hpp"
#include "partlab/rational.hpp"

namespace partlab {

// Counter-based generator (Philox 4x32-10): the block value is a pure
// function of (seed, index, block), so trials are order-independent and
// reproducible under any execution schedule.
struct PhiloxBlock {
    std::uint32_t word[4];
};
PhiloxBlock philox_block(std::uint64_t seed, std::uint64_t index, std::uint64_t block);

// The m fair flips of trial `index` under `seed`.
CoinSequence sample_flips(unsigned m, std::uint64_t seed, std::uint64_t index);

Partition sample_partition(unsigned m, std::uint64_t seed, std::uint64_t index);

// Size N of the sampled partition, without materializing it.
std::uint64_t sample_size(unsigned m, std::uint64_t seed, std::uint64_t index);

struct TailFraction {
    double d = 0;        // radius multiplier as supplied
    double relaxed = 0;  // fraction with |N - m(m+3)/8| >= d * m^{3/2} / 4
    double sd = 0;       // fraction with |N - m(m+3)/8| >= d * sqrt(Var N)
};

struct SampleStats {
    unsigned m = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double size_mean = 0;
    double size_var = 0;  // unbiased (n-1) estimator
    double se_mean = 0;   // sqrt(size_var / trials)
    std::vector<TailFraction> tails;

    std::string to_json() const;
    std::string to_csv() const;
};

// Monte Carlo moments of N over `trials` draws. Tail events are decided in
// exact integer arithmetic against the exact dyadic square of each d, and
// the mean/variance come from exact integer sums, so the result is a pure
// function of (m, trials, seed, tail_ds). Throws DomainError for trials < 2.
SampleStats empirical_moments(unsigned m, std::uint64_t trials, std::uint64_t seed,
                              const std::vector<double>& tail_ds = {});

// Exact tail fraction over all 2^m sequences with the relaxed radius
// d * m^{3/2} / 4, where d = sqrt(d_squared). Throws DomainError for
// d_squared <= 0 and CapExceeded for m > cap.
Rational chebyshev_tail_exact(unsigned m, const Rational& d_squared,
                              unsigned cap = kDefaultMomentEnumerationCap);

// Monte Carlo estimate of the same fraction.
double chebyshev_tail_mc(unsigned m, double d, std::uint64_t trials, std::uint64_t seed);

} // namespace partlab
