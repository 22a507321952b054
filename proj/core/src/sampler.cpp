#include "partlab/sampler.hpp"

#include <nlohmann/json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "partlab/errors.hpp"

namespace partlab {

namespace {

using ordered_json = nlohmann::ordered_json;

// Philox 4x32-10 round constants (Salmon et al., SC'11).
constexpr std::uint32_t kWeylA = 0x9E3779B9u;
constexpr std::uint32_t kWeylB = 0xBB67AE85u;
constexpr std::uint32_t kMulA = 0xD2511F53u;
constexpr std::uint32_t kMulB = 0xCD9E8D57u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    const std::uint64_t prod0 = static_cast<std::uint64_t>(kMulA) * ctr[0];
    const std::uint64_t prod1 = static_cast<std::uint64_t>(kMulB) * ctr[2];
    const std::uint32_t out0 = static_cast<std::uint32_t>(prod1 >> 32) ^ ctr[1] ^ key[0];
    const std::uint32_t out1 = static_cast<std::uint32_t>(prod1);
    const std::uint32_t out2 = static_cast<std::uint32_t>(prod0 >> 32) ^ ctr[3] ^ key[1];
    const std::uint32_t out3 = static_cast<std::uint32_t>(prod0);
    ctr[0] = out0;
    ctr[1] = out1;
    ctr[2] = out2;
    ctr[3] = out3;
}

std::string format_seventeen(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Exact integer threshold for the event (8N - m(m+3))^2 >= bound, where
// bound is a positive rational: the event is equivalent to
// (8N - m(m+3))^2 >= ceil(bound).
Int ceil_of(const Rational& bound) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), bound.get_num().get_mpz_t(), bound.get_den().get_mpz_t());
    return out;
}

Int centered_square(unsigned m, std::uint64_t n) {
    const Int center = Int(static_cast<unsigned long>(m)) * (m + 3ul);
    Int diff = 8 * Int(static_cast<unsigned long>(n)) - center;
    return diff * diff;
}

} // namespace

PhiloxBlock philox_block(std::uint64_t seed, std::uint64_t index, std::uint64_t block) {
    std::uint32_t ctr[4] = {
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
        static_cast<std::uint32_t>(block),
        static_cast<std::uint32_t>(block >> 32),
    };
    std::uint32_t key[2] = {
        static_cast<std::uint32_t>(seed),
        static_cast<std::uint32_t>(seed >> 32),
    };
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kWeylA;
        key[1] += kWeylB;
    }
    return PhiloxBlock{{ctr[0], ctr[1], ctr[2], ctr[3]}};
}

CoinSequence sample_flips(unsigned m, std::uint64_t seed, std::uint64_t index) {
    std::vector<Flip> flips;
    flips.reserve(m);
    PhiloxBlock block{};
    for (unsigned t = 0; t < m; ++t) {
        const unsigned bit = t % 128;
        if (bit == 0) block = philox_block(seed, index, t / 128);
        const std::uint32_t word = block.word[bit / 32];
        flips.push_back(((word >> (bit % 32)) & 1u) ? Flip::Head : Flip::Tail);
    }
    return CoinSequence(std::move(flips));
}

Partition sample_partition(unsigned m, std::uint64_t seed, std::uint64_t index) {
    return partition_from_flips(sample_flips(m, seed, index));
}

std::uint64_t sample_size(unsigned m, std::uint64_t seed, std::uint64_t index) {
    std::uint64_t heads = 0, tails = 0, contribution_sum = 0;
    PhiloxBlock block{};
    for (unsigned t = 0; t < m; ++t) {
        const unsigned bit = t % 128;
        if (bit == 0) block = philox_block(seed, index, t / 128);
        const std::uint32_t word = block.word[bit / 32];
        if ((word >> (bit % 32)) & 1u) {
            ++heads;
        } else {
            contribution_sum += heads;
            ++tails;
        }
    }
    return tails + contribution_sum;
}

SampleStats empirical_moments(unsigned m, std::uint64_t trials, std::uint64_t seed,
                              const std::vector<double>& tail_ds) {
    if (trials < 2) throw DomainError("empirical moments need at least 2 trials");

    // Exact per-d thresholds; relaxed uses d^2 m^3 / 16, sd uses d^2 Var N,
    // both scaled by 64 to match (8N - m(m+3))^2.
    const Int m3 = Int(static_cast<unsigned long>(m)) * m * m;
    const Rational var_n = variance_size(m);
    std::vector<Int> relaxed_threshold, sd_threshold;
    std::vector<std::uint64_t> relaxed_count(tail_ds.size(), 0), sd_count(tail_ds.size(), 0);
    for (double d : tail_ds) {
        if (!(d > 0)) throw DomainError("tail radius multiplier d must be > 0");
        const Rational d2 = rational_from_double(d) * rational_from_double(d);
        relaxed_threshold.push_back(ceil_of(Rational(4 * m3) * d2));
        sd_threshold.push_back(ceil_of(Rational(64) * d2 * var_n));
    }

    unsigned __int128 sum = 0, sum_sq = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        const std::uint64_t n = sample_size(m, seed, i);
        sum += n;
        sum_sq += static_cast<unsigned __int128>(n) * n;
        if (!tail_ds.empty()) {
            const Int sq = centered_square(m, n);
            for (std::size_t k = 0; k < tail_ds.size(); ++k) {
                if (sq >= relaxed_threshold[k]) ++relaxed_count[k];
                if (sq >= sd_threshold[k]) ++sd_count[k];
            }
        }
    }

    const auto to_int = [](unsigned __int128 v) {
        Int out(static_cast<unsigned long>(v >> 64));
        out <<= 64;
        out += static_cast<unsigned long>(v);
        return out;
    };
    const Int total = to_int(sum);
    const Int total_sq = to_int(sum_sq);
    const Int t(static_cast<unsigned long>(trials));

    Rational mean(total, t);
    mean.canonicalize();
    // Unbiased: (sum_sq - sum^2/t) / (t - 1)
    Rational correction(total * total, t);
    correction.canonicalize();
    Rational var = (Rational(total_sq) - correction) / Rational(t - 1);
    var.canonicalize();

    SampleStats stats;
    stats.m = m;
    stats.trials = trials;
    stats.seed = seed;
    stats.size_mean = mean.get_d();
    stats.size_var = var.get_d();
    const Rational mean_var = var / Rational(t);
    stats.se_mean = std::sqrt(mean_var.get_d());
    for (std::size_t k = 0; k < tail_ds.size(); ++k) {
        TailFraction f;
        f.d = tail_ds[k];
        f.relaxed = static_cast<double>(relaxed_count[k]) / static_cast<double>(trials);
        f.sd = static_cast<double>(sd_count[k]) / static_cast<double>(trials);
        stats.tails.push_back(f);
    }
    return stats;
}

std::string SampleStats::to_json() const {
    ordered_json j;
    j["m"] = m;
    j["trials"] = trials;
    j["seed"] = seed;
    j["mean_N"] = format_seventeen(size_mean);
    j["var_N"] = format_seventeen(size_var);
    j["se_mean"] = format_seventeen(se_mean);
    ordered_json arr = ordered_json::array();
    for (const TailFraction& f : tails) {
        ordered_json row;
        row["d"] = format_seventeen(f.d);
        row["tail_relaxed"] = format_seventeen(f.relaxed);
        row["tail_sd"] = format_seventeen(f.sd);
        arr.push_back(std::move(row));
    }
    j["tails"] = std::move(arr);
    return j.dump(2) + "\n";
}

std::string SampleStats::to_csv() const {
    std::string out = "m,trials,seed,mean_N,var_N,se_mean,d,tail_relaxed,tail_sd\n";
    char buf[256];
    const auto prefix = [&](const char* d, const char* relaxed, const char* sd) {
        std::snprintf(buf, sizeof buf, "%u,%" PRIu64 ",%" PRIu64 ",%.17g,%.17g,%.17g,%s,%s,%s\n",
                      m, trials, seed, size_mean, size_var, se_mean, d, relaxed, sd);
        out += buf;
    };
    if (tails.empty()) {
        prefix("", "", "");
    } else {
        for (const TailFraction& f : tails)
            prefix(format_seventeen(f.d).c_str(), format_seventeen(f.relaxed).c_str(),
                   format_seventeen(f.sd).c_str());
    }
    return out;
}

Rational chebyshev_tail_exact(unsigned m, const Rational& d_squared, unsigned cap) {
    if (!(d_squared > 0)) throw DomainError("chebyshev tail needs d > 0");
    if (m > cap)
        throw CapExceeded("exact tail enumeration capped at m=" + std::to_string(cap));
    if (m > 30) throw CapExceeded("exact tail enumeration supports m <= 30");

    const Int m3 = Int(static_cast<unsigned long>(m)) * m * m;
    const Int threshold = ceil_of(Rational(4 * m3) * d_squared);

    const std::uint64_t outcomes = std::uint64_t{1} << m;
    std::uint64_t hits = 0;
    for (std::uint64_t w = 0; w < outcomes; ++w) {
        std::uint64_t heads = 0, tails = 0, csum = 0;
        for (unsigned flip = 0; flip < m; ++flip) {
            if ((w >> flip) & 1u) {
                ++heads;
            } else {
                csum += heads;
                ++tails;
            }
        }
        if (centered_square(m, tails + csum) >= threshold) ++hits;
    }
    Rational out(Int(hits), Int(static_cast<unsigned long>(outcomes)));
    out.canonicalize();
    return out;
}

double chebyshev_tail_mc(unsigned m, double d, std::uint64_t trials, std::uint64_t seed) {
    if (!(d > 0)) throw DomainError("chebyshev tail needs d > 0");
    if (trials == 0) throw DomainError("chebyshev tail needs at least one trial");
    const Int m3 = Int(static_cast<unsigned long>(m)) * m * m;
    const Rational d2 = rational_from_double(d) * rational_from_double(d);
    const Int threshold = ceil_of(Rational(4 * m3) * d2);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i)
        if (centered_square(m, sample_size(m, seed, i)) >= threshold) ++hits;
    return static_cast<double>(hits) / static_cast<double>(trials);
}

} // namespace partlab
