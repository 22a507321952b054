#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "partlab/count_table.hpp"
#include "partlab/interval.hpp"
#include "partlab/rational.hpp"

namespace partlab {

enum class Verdict { Holds, Fails, Indeterminate };
std::string to_string(Verdict v);

// One checked inequality. The log2 fields are rounding-safe enclosures of
// the two sides (-inf when a side is <= 0); for the exact integer/rational
// checks they are informational and the verdict is decided exactly.
struct BoundVerdict {
    std::string subject;
    std::string params;
    double lhs_log2_lo = 0;
    double lhs_log2_hi = 0;
    double rhs_log2_lo = 0;
    double rhs_log2_hi = 0;
    Verdict verdict = Verdict::Indeterminate;
    bool precondition_met = true;  // dagger checks below eta_threshold clear this
};

// Columns: subject,params,lhs_log2_lo,lhs_log2_hi,rhs_log2_lo,rhs_log2_hi,verdict
std::string verdicts_to_csv(const std::vector<BoundVerdict>& rows);
std::string verdicts_to_json(const std::vector<BoundVerdict>& rows);

// Enclosures of the constants in play.
struct Constants {
    Interval c_star;         // sqrt(8) * ln 2      ~ 1.9605
    Interval c_upper;        // 2 * sqrt(pi^2 / 6)  ~ 2.5651
    Interval c_explicit;     // (8/3) * ln 2        ~ 1.8484
    Interval d_opt;          // sqrt 3
    Interval window_factor;  // 2 / (3 sqrt 3)      ~ 0.3849
    static Constants make(mpfr_prec_t prec = kBasePrecision);
};

// Inclusive integer range; empty when hi < lo.
struct IntegerRange {
    std::uint64_t lo = 1;
    std::uint64_t hi = 0;
    bool empty() const { return hi < lo; }
    std::uint64_t count() const { return empty() ? 0 : hi - lo + 1; }
};

// Non-negative integers n with |n - m(m+3)/8| < sqrt(d_squared) * m^{3/2}/4
// (strict), decided in exact arithmetic. DomainError for m < 3 or
// d_squared <= 0. May be empty for tiny radii.
IntegerRange window(unsigned m, const Rational& d_squared);

// Sum of p(n) over the window vs 2^m (1 - 1/d^2), exact; never Indeterminate.
BoundVerdict check_window_sum(unsigned m, const Rational& d_squared, const CountTable& table);

// floor(m(m+3)/8 + d m^{3/2}/4), computed exactly (the radius is either a
// rational or provably irrational, so the floor never depends on rounding).
std::uint64_t pointwise_argument(unsigned m, const Rational& d_squared);

// p(floor(m(m+3)/8 + d m^{3/2}/4)) > 2^{m+1} (1 - 1/d^2) / (d m^{3/2}).
BoundVerdict check_pointwise(unsigned m, const Rational& d_squared, const CountTable& table);

struct OptimalD {
    Interval d;            // sqrt 3
    Interval value;        // 2 / (3 sqrt 3)
    double scan_argmax;    // grid argmax of f(d) = (1/d)(1 - 1/d^2)
    double scan_max;
};
// Grid scan over [1.01, 10] step 1e-4 confirms the maximizer.
OptimalD optimal_d(mpfr_prec_t prec = kBasePrecision);

struct EtaThreshold {
    std::uint64_t threshold = 0;   // least m >= 3 with 3m + 2 sqrt(3) m^{3/2} < eta m^2
    bool next_100_hold = false;    // sanity window above the threshold
};
// Exact scan (root-formula seeded). DomainError for eta <= 0.
EtaThreshold eta_threshold(const Rational& eta);

// p(floor(m^2 (1+eta) / 8)) > 2^m * 4 / (3 sqrt(3) m^{3/2}). The raw
// comparison is always computed; precondition_met records whether
// m >= eta_threshold(eta).
BoundVerdict check_dagger(unsigned m, const Rational& eta, const CountTable& table);

// log2 of the explicit lower bound: (8/3) sqrt(n) - 5/2 - (3/4) log2 n.
Interval explicit_bound_log2(std::uint64_t n, mpfr_prec_t prec = kBasePrecision);
// The bound itself, 2^{8 sqrt(n)/3} / (2^{5/2} n^{3/4}).
Interval explicit_bound_value(std::uint64_t n, mpfr_prec_t prec = kBasePrecision);

// p(n) >= explicit bound (non-strict).
BoundVerdict check_explicit(std::uint64_t n, const CountTable& table);

struct SweepSummary {
    std::vector<BoundVerdict> rows;
    std::size_t holds = 0;
    std::size_t fails = 0;
    std::size_t indeterminate = 0;
    // Smallest certified log2 margin (lhs_lo - rhs_hi) and where it occurs.
    double min_margin_log2 = std::numeric_limits<double>::infinity();
    std::uint64_t min_margin_at = 0;
};

// Explicit bound over every n in [n_lo, n_hi]; 2 <= n_lo <= n_hi <= max_n.
SweepSummary verify_explicit_bound(std::uint64_t n_lo, std::uint64_t n_hi,
                                   const CountTable& table, bool keep_rows = true);

struct RatioRow {
    std::uint64_t n = 0;
    double ratio_lo = 0;  // enclosure of ln p(n) / sqrt(n)
    double ratio_hi = 0;
    bool above_c_star = false;    // certainly > sqrt(8) ln 2
    bool at_most_c_upper = false; // certainly <= 2 sqrt(pi^2/6)
};
std::vector<RatioRow> ratio_table(const std::vector<std::uint64_t>& ns, const CountTable& table);

// ln p(n) <= 2 sqrt(pi^2/6) sqrt(n).
BoundVerdict upper_bound_check(std::uint64_t n, const CountTable& table);

struct StarThreshold {
    std::uint64_t minimal_n = 0;   // least N with the ratio above the RHS for all n in [N, max_n]
    std::uint64_t last_failure = 0;  // 0 when nothing failed down to n = 1
    std::uint64_t scanned_max = 0;
    bool complete = true;          // false if an Indeterminate stopped the scan
};
// Scans from table.max_n down to the last failure of
// ln p(n)/sqrt(n) > sqrt(8) ln 2 / (1 + epsilon). DomainError for eps <= 0.
StarThreshold star_threshold(double epsilon, const CountTable& table);

} // namespace partlab
