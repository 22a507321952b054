#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partlab/rational.hpp"

namespace partlab {

inline constexpr unsigned kDefaultMomentEnumerationCap = 20;

// Closed forms. All values exact rationals; no floating point in this module.
Rational expected_size(unsigned m);         // m(m+3)/8
Rational variance_size(unsigned m);         // m^3/48 + m^2/32 + 19m/96
Rational variance_crude_bound(unsigned m);  // m^3/16; DomainError for m < 3

// (mean, variance) of the head count after t flips: (t/2, t/4).
std::pair<Rational, Rational> binomial_moments(unsigned t);

// (mean, variance) of the flip-t size contribution: ((t-1)/4, (t^2-1)/16).
// DomainError for t < 1.
std::pair<Rational, Rational> contribution_moments(unsigned t);

struct PerFlipMoments {
    unsigned t = 0;
    Rational contribution_mean, contribution_var;  // E[C_t], Var C_t
    Rational heads_mean, heads_var;                // E[X_t], Var X_t
};

struct MomentSummary {
    unsigned m = 0;
    Rational size_mean, size_var;    // E[N], Var N
    Rational tails_mean, tails_var;  // E[Y], Var Y
    std::vector<PerFlipMoments> per_flip;

    // Rationals serialize as "num/den" strings, never floats.
    std::string to_json() const;
};

// Exhaustive exact-rational pass over all 2^m sequences.
// Throws CapExceeded for m > cap.
MomentSummary enumerate_moments(unsigned m, unsigned cap = kDefaultMomentEnumerationCap);

struct CovarianceEntry {
    std::string label;  // "Cov(C_2,X_5)" etc.
    unsigned t = 0;
    unsigned u = 0;  // 0 for the Cov(C_t, Y) rows
    Rational covariance;
};

// Exact Cov(C_t, X_u) for t <= u, Cov(C_t, C_u) for t < u, and Cov(C_t, Y),
// all by enumeration over the 2^m sequences.
std::vector<CovarianceEntry> covariance_report(unsigned m,
                                               unsigned cap = kDefaultMomentEnumerationCap);

std::string covariance_report_to_json(const std::vector<CovarianceEntry>& entries);

// A witness that C_t, C_u are dependent despite zero covariance:
// P[C_u = 0 | C_t >= 1] != P[C_u = 0].
struct DependenceWitness {
    unsigned t = 0;
    unsigned u = 0;
    Rational conditional_zero;  // P[C_u = 0 | C_t >= 1]
    Rational marginal_zero;     // P[C_u = 0]
};

std::optional<DependenceWitness> find_dependence_witness(
    unsigned m, unsigned cap = kDefaultMomentEnumerationCap);

} // namespace partlab
