#include "partlab/count_table.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "partlab/errors.hpp"
#include "partlab/sampler.hpp"

using namespace partlab;

namespace {

// Third, fully explicit route: recursively generate every partition of n
// (largest part first) and count them one by one.
void walk_partitions(unsigned rest, unsigned max_part, std::uint64_t& count) {
    if (rest == 0) {
        ++count;
        return;
    }
    for (unsigned part = std::min(rest, max_part); part >= 1; --part)
        walk_partitions(rest - part, part, count);
}

std::uint64_t count_by_generation(unsigned n) {
    std::uint64_t count = 0;
    walk_partitions(n, n == 0 ? 1 : n, count);
    return count;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("table prefix matches the known small values") {
    const CountTable table = CountTable::build(5);
    const std::vector<Int> expected = {Int(1), Int(1), Int(2), Int(3), Int(5), Int(7)};
    CHECK(table.values() == expected);
    CHECK(CountTable::build(0).values() == std::vector<Int>{Int(1)});
}

TEST_CASE("recurrence, largest-part recursion, and explicit generation agree") {
    const CountTable table = CountTable::build(60);
    for (unsigned n = 0; n <= 60; ++n) CHECK(table.at(n) == count_by_enumeration(n));
    for (unsigned n = 0; n <= 22; ++n)
        CHECK(table.at(n) == Int(static_cast<unsigned long>(count_by_generation(n))));
    CHECK(table.at(5) == 7);
    CHECK(count_by_enumeration(10) == 42);
    CHECK(table.at(45) == 89134);
}

TEST_CASE("p(100) from the recurrence equals the enumeration oracle") {
    const CountTable table = CountTable::build(100);
    CHECK(table.at(100) == count_by_enumeration(100));
    CHECK(table.at(100) == Int("190569292"));
}

TEST_CASE("monotonicity from n = 1 on") {
    const CountTable table = CountTable::build(300);
    for (unsigned n = 1; n < 300; ++n) CHECK(table.at(n + 1) >= table.at(n));
    CHECK(table.check_recurrence());
}

TEST_CASE("builds are deterministic and extension matches a fresh build") {
    const CountTable a = CountTable::build(200);
    const CountTable b = CountTable::build(200);
    CHECK(a.values() == b.values());

    CountTable grown = CountTable::build(50);
    grown.extend(200);
    CHECK(grown.values() == a.values());
    grown.extend(100);  // no-op
    CHECK(grown.max_n() == 200);
}

TEST_CASE("cache file round trip") {
    const auto path = temp_file("partlab-table-test.txt");
    const CountTable table = CountTable::build(80);
    table.save(path);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "PARTITION-TABLE v1 max_n=80");
    in.close();

    const CountTable loaded = CountTable::load(path);
    CHECK(loaded.values() == table.values());
    std::filesystem::remove(path);
}

TEST_CASE("cache validation rejects corrupt files") {
    const auto path = temp_file("partlab-table-bad.txt");
    {
        std::ofstream out(path);
        out << "PARTITION-TABLE v2 max_n=2\n1\n1\n2\n";
    }
    CHECK_THROWS_AS(CountTable::load(path), ParseError);
    {
        std::ofstream out(path);
        out << "PARTITION-TABLE v1 max_n=3\n1\n1\n2\n";  // missing entry
    }
    CHECK_THROWS_AS(CountTable::load(path), ParseError);
    {
        std::ofstream out(path);
        out << "PARTITION-TABLE v1 max_n=2\n1\n2\n1\n";  // not monotone
    }
    CHECK_THROWS_AS(CountTable::load(path), ParseError);
    {
        std::ofstream out(path);
        out << "PARTITION-TABLE v1 max_n=2\n2\n2\n3\n";  // p(0) != 1
    }
    CHECK_THROWS_AS(CountTable::load(path), ParseError);
    CHECK_THROWS_AS(CountTable::load(temp_file("partlab-no-such-file.txt")), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("resource and cap limits") {
    CHECK_THROWS_AS(CountTable::build(1'000'000, /*budget=*/1024), ResourceLimit);
    CountTable small = CountTable::build(10);
    CHECK_THROWS_AS(small.extend(1'000'000, /*budget=*/1024), ResourceLimit);
    CHECK_THROWS_AS(count_by_enumeration(121), CapExceeded);
    CHECK_THROWS_AS(count_by_enumeration(31, /*cap=*/30), CapExceeded);
    CHECK(count_by_enumeration(30, /*cap=*/30) == 5604);
}

TEST_CASE("count_at_real floors its argument") {
    const CountTable table = CountTable::build(10);
    CHECK(count_at_real(4.5, table) == 5);
    CHECK(count_at_real(5.0, table) == 7);
    CHECK(count_at_real(0.9, table) == 1);
    CHECK(count_at_real(10.999, table) == 42);
    CHECK_THROWS_AS(count_at_real(11.0, table), OutOfRange);
    CHECK_THROWS_AS(count_at_real(-0.25, table), OutOfRange);
}

TEST_CASE("log2 bounds: exact powers and the spec values") {
    CHECK(log2_lower_upper(Int(1)) == std::pair<double, double>(0.0, 0.0));
    CHECK(log2_lower_upper(Int(1024)) == std::pair<double, double>(10.0, 10.0));
    const auto [lo, hi] = log2_lower_upper(Int(7));
    CHECK(lo <= 2.8073549220576042);
    CHECK(hi >= 2.8073549220576037);
    CHECK(hi - lo <= std::ldexp(1.0, -40));
    CHECK_THROWS_AS(log2_lower_upper(Int(0)), DomainError);
}

TEST_CASE("log2 bounds bracket the bit length for random big values") {
    for (int i = 0; i < 200; ++i) {
        // Pseudo-random values of up to ~576 bits from the counter generator.
        Int v = 0;
        const unsigned words = 1 + static_cast<unsigned>(i % 18);
        for (unsigned w = 0; w < words; ++w) {
            const PhiloxBlock block = philox_block(99, i, w);
            v <<= 32;
            v += static_cast<unsigned long>(block.word[0]);
        }
        if (v == 0) v = 1;
        const auto [lo, hi] = log2_lower_upper(v);
        const double bits = static_cast<double>(mpz_sizeinbase(v.get_mpz_t(), 2));
        CHECK(lo >= bits - 1);
        CHECK(hi <= bits);
        CHECK(lo <= hi);
        CHECK(hi - lo <= std::ldexp(1.0, -40));
    }
    for (unsigned k = 1; k <= 400; k += 13) {
        const auto [lo, hi] = log2_lower_upper(Int(1) << k);
        CHECK(lo == static_cast<double>(k));
        CHECK(hi == static_cast<double>(k));
    }
}
