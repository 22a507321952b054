#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace partlab {

enum class Flip : std::uint8_t { Head, Tail };

// An ordered record of fair-coin flips: one sample point of the model.
class CoinSequence {
public:
    CoinSequence() = default;
    explicit CoinSequence(std::vector<Flip> flips) : flips_(std::move(flips)) {}

    // Parses "HTTHHTHHTH"; the empty string is the empty sequence.
    static CoinSequence from_string(std::string_view text);
    std::string to_string() const;

    std::size_t flip_count() const { return flips_.size(); }
    const std::vector<Flip>& flips() const { return flips_; }

    bool operator==(const CoinSequence&) const = default;

private:
    std::vector<Flip> flips_;
};

// Weakly decreasing positive parts; the empty partition is the unique
// partition of 0.
class Partition {
public:
    Partition() = default;
    // Validates parts: all >= 1 and weakly decreasing.
    explicit Partition(std::vector<std::uint64_t> parts);

    // Parses "[6,4,2,2]" ("[]" for the empty partition).
    static Partition from_string(std::string_view text);
    std::string to_string() const;

    const std::vector<std::uint64_t>& parts() const { return parts_; }
    std::uint64_t size() const { return size_; }       // sum of parts
    std::size_t length() const { return parts_.size(); }

    bool operator==(const Partition&) const = default;

private:
    std::vector<std::uint64_t> parts_;
    std::uint64_t size_ = 0;
};

// Derived per-flip series for one coin sequence.
struct FlipProcess {
    std::vector<std::uint64_t> heads_prefix;   // X_0..X_m, X_0 = 0
    std::vector<std::uint64_t> contributions;  // C_1..C_m
    std::uint64_t tails_total = 0;             // Y = m - X_m
    std::uint64_t total_size = 0;              // N = Y + sum of C_t
};

// Each tail at flip t contributes a part of X_{t-1} + 1 boxes; parts are
// returned weakly decreasing.
Partition partition_from_flips(const CoinSequence& seq);

FlipProcess flip_process(const CoinSequence& seq);

// The unique preimage of p at m flips: tails in increasing part order, the
// tail for a part of value v placed after exactly v-1 cumulative heads,
// remaining heads trailing. Throws NotRepresentable when length > m or
// largest part > m - length + 1.
CoinSequence flips_from_partition(const Partition& p, std::size_t m);

} // namespace partlab
