#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "partlab/rational.hpp"

namespace partlab {

inline constexpr std::uint64_t kDefaultTableMemoryBudget = 2ull << 30;  // 2 GiB
inline constexpr unsigned kDefaultEnumerationCap = 120;

// Exact partition counts p(0..max_n), built with Euler's pentagonal-number
// recurrence. Immutable once built; safe to share across readers.
class CountTable {
public:
    static CountTable build(std::size_t max_n,
                            std::uint64_t memory_budget_bytes = kDefaultTableMemoryBudget);

    // Reads the cache format written by save(); validates the header, the
    // entry count, p(0) = 1 and monotonicity. Throws ParseError on any
    // mismatch. Recurrence re-verification is available via check_recurrence.
    static CountTable load(const std::filesystem::path& file);

    // Extends in place up to new_max_n (no-op if already that large).
    void extend(std::size_t new_max_n,
                std::uint64_t memory_budget_bytes = kDefaultTableMemoryBudget);

    // Line 1: "PARTITION-TABLE v1 max_n=<N>", then one decimal value per line.
    void save(const std::filesystem::path& file) const;

    std::size_t max_n() const { return values_.size() - 1; }
    const Int& at(std::size_t n) const;  // OutOfRange past max_n
    const std::vector<Int>& values() const { return values_; }

    // Recomputes every entry from the recurrence; true iff all match.
    bool check_recurrence() const;

private:
    CountTable() = default;
    std::vector<Int> values_;
};

// Rough size estimate used for the ResourceLimit check.
std::uint64_t estimate_table_bytes(std::size_t max_n);

// Independent oracle: counts partitions of n by recursion over the largest
// part (memoized). Throws CapExceeded for n > cap.
Int count_by_enumeration(unsigned n, unsigned cap = kDefaultEnumerationCap);

// p extended to the reals by p(x) = p(floor(x)). Throws OutOfRange when
// x < 0 or floor(x) > table.max_n.
const Int& count_at_real(double x, const CountTable& table);

// Directed-rounding bounds with lower <= log2(v) <= upper and
// upper - lower <= 2^-40. Throws DomainError for v < 1.
std::pair<double, double> log2_lower_upper(const Int& v);

} // namespace partlab
