#include "partlab/count_table.hpp"

#include <mpfr.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <string>

#include "partlab/errors.hpp"

namespace partlab {

namespace {

constexpr char kCacheHeaderPrefix[] = "PARTITION-TABLE v1 max_n=";

// Alternating pentagonal-number sum over earlier entries.
Int recurrence_entry(const std::vector<Int>& p, std::size_t n) {
    Int acc = 0;
    for (std::size_t k = 1;; ++k) {
        const std::size_t g1 = k * (3 * k - 1) / 2;
        if (g1 > n) break;
        if (k % 2 == 1)
            acc += p[n - g1];
        else
            acc -= p[n - g1];
        const std::size_t g2 = g1 + k;  // k(3k+1)/2
        if (g2 <= n) {
            if (k % 2 == 1)
                acc += p[n - g2];
            else
                acc -= p[n - g2];
        }
    }
    return acc;
}

void check_budget(std::size_t max_n, std::uint64_t budget) {
    if (estimate_table_bytes(max_n) > budget)
        throw ResourceLimit("count table to max_n=" + std::to_string(max_n) +
                            " exceeds the memory budget");
}

} // namespace

std::uint64_t estimate_table_bytes(std::size_t max_n) {
    // Entry n has ~1.114 sqrt(n) decimal digits; mean entry is ~2/3 of the
    // largest, plus per-mpz overhead.
    const double mean_digits = 0.75 * std::sqrt(static_cast<double>(max_n));
    return static_cast<std::uint64_t>((max_n + 1) * (mean_digits * 0.42 + 64.0));
}

CountTable CountTable::build(std::size_t max_n, std::uint64_t memory_budget_bytes) {
    check_budget(max_n, memory_budget_bytes);
    CountTable table;
    table.values_.reserve(max_n + 1);
    table.values_.emplace_back(1);
    for (std::size_t n = 1; n <= max_n; ++n)
        table.values_.push_back(recurrence_entry(table.values_, n));
    return table;
}

void CountTable::extend(std::size_t new_max_n, std::uint64_t memory_budget_bytes) {
    if (new_max_n <= max_n()) return;
    check_budget(new_max_n, memory_budget_bytes);
    values_.reserve(new_max_n + 1);
    for (std::size_t n = values_.size(); n <= new_max_n; ++n)
        values_.push_back(recurrence_entry(values_, n));
}

const Int& CountTable::at(std::size_t n) const {
    if (n >= values_.size())
        throw OutOfRange("p(" + std::to_string(n) + ") is past table max_n=" +
                         std::to_string(max_n()));
    return values_[n];
}

bool CountTable::check_recurrence() const {
    for (std::size_t n = 1; n < values_.size(); ++n)
        if (recurrence_entry(values_, n) != values_[n]) return false;
    return values_[0] == 1;
}

void CountTable::save(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw OutOfRange("cannot open cache file for writing: " + file.string());
    out << kCacheHeaderPrefix << max_n() << '\n';
    for (const Int& v : values_) out << v.get_str() << '\n';
    out.close();
    if (!out) throw OutOfRange("failed writing cache file: " + file.string());
}

CountTable CountTable::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ParseError("cannot open cache file: " + file.string());
    std::string header;
    if (!std::getline(in, header) || header.rfind(kCacheHeaderPrefix, 0) != 0)
        throw ParseError("bad cache header in " + file.string());
    std::size_t declared = 0;
    try {
        declared = std::stoull(header.substr(sizeof(kCacheHeaderPrefix) - 1));
    } catch (const std::exception&) {
        throw ParseError("bad max_n in cache header of " + file.string());
    }

    CountTable table;
    table.values_.reserve(declared + 1);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Int v;
        if (mpz_set_str(v.get_mpz_t(), line.c_str(), 10) != 0)
            throw ParseError("bad table entry at index " +
                             std::to_string(table.values_.size()) + " in " + file.string());
        table.values_.push_back(std::move(v));
    }
    if (table.values_.size() != declared + 1)
        throw ParseError("cache declares max_n=" + std::to_string(declared) + " but holds " +
                         std::to_string(table.values_.size()) + " entries");
    if (table.values_[0] != 1) throw ParseError("cache entry p(0) != 1");
    if (declared >= 5 && table.values_[5] != 7) throw ParseError("cache entry p(5) != 7");
    for (std::size_t n = 2; n < table.values_.size(); ++n)
        if (table.values_[n] < table.values_[n - 1])
            throw ParseError("cache entries not monotone at index " + std::to_string(n));
    return table;
}

Int count_by_enumeration(unsigned n, unsigned cap) {
    if (n > cap)
        throw CapExceeded("enumeration oracle capped at n=" + std::to_string(cap));
    // memo[k][r]: partitions of r whose largest part is at most k.
    std::vector<std::vector<Int>> memo(n + 1, std::vector<Int>(n + 1, Int(-1)));
    const std::function<const Int&(unsigned, unsigned)> count = [&](unsigned rest,
                                                                    unsigned k) -> const Int& {
        if (k > rest) k = rest;
        Int& slot = memo[k][rest];
        if (slot >= 0) return slot;
        Int total = 0;
        if (rest == 0) {
            total = 1;
        } else {
            for (unsigned largest = 1; largest <= k; ++largest)
                total += count(rest - largest, largest);
        }
        slot = std::move(total);
        return slot;
    };
    return count(n, n);
}

const Int& count_at_real(double x, const CountTable& table) {
    if (!(x >= 0.0))
        throw OutOfRange("count_at_real needs x >= 0");
    const double floored = std::floor(x);
    if (floored > static_cast<double>(table.max_n()))
        throw OutOfRange("count_at_real argument past table max_n");
    return table.at(static_cast<std::size_t>(floored));
}

std::pair<double, double> log2_lower_upper(const Int& v) {
    if (v < 1) throw DomainError("log2_lower_upper needs v >= 1");
    mpfr_t x;
    mpfr_init2(x, 96);
    mpfr_set_z(x, v.get_mpz_t(), MPFR_RNDD);
    mpfr_log2(x, x, MPFR_RNDD);
    const double lo = mpfr_get_d(x, MPFR_RNDD);
    mpfr_set_z(x, v.get_mpz_t(), MPFR_RNDU);
    mpfr_log2(x, x, MPFR_RNDU);
    const double hi = mpfr_get_d(x, MPFR_RNDU);
    mpfr_clear(x);
    return {lo, hi};
}

} // namespace partlab
