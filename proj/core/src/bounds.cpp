#include "partlab/bounds.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "partlab/errors.hpp"

namespace partlab {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr mpfr_prec_t kMaxPrecision = 6144;
const double kNegInf = -std::numeric_limits<double>::infinity();

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

enum class Rel { Greater, Geq, Leq };

struct CompareOutcome {
    Verdict verdict = Verdict::Indeterminate;
    double lhs_lo = 0, lhs_hi = 0, rhs_lo = 0, rhs_hi = 0;
};

// Evaluates both sides at doubling precision until the intervals separate.
template <typename LhsFn, typename RhsFn>
CompareOutcome compare_with_escalation(Rel rel, const LhsFn& lhs_at, const RhsFn& rhs_at) {
    CompareOutcome out;
    for (mpfr_prec_t prec = kBasePrecision; prec <= kMaxPrecision; prec *= 2) {
        const Interval lhs = lhs_at(prec);
        const Interval rhs = rhs_at(prec);
        out.lhs_lo = lhs.lo_double();
        out.lhs_hi = lhs.hi_double();
        out.rhs_lo = rhs.lo_double();
        out.rhs_hi = rhs.hi_double();
        bool holds = false, fails = false;
        switch (rel) {
            case Rel::Greater:
                holds = lhs.certainly_greater(rhs);
                fails = lhs.certainly_leq(rhs);
                break;
            case Rel::Geq:
                holds = lhs.certainly_geq(rhs);
                fails = lhs.certainly_less(rhs);
                break;
            case Rel::Leq:
                holds = lhs.certainly_leq(rhs);
                fails = lhs.certainly_greater(rhs);
                break;
        }
        if (holds) {
            out.verdict = Verdict::Holds;
            return out;
        }
        if (fails) {
            out.verdict = Verdict::Fails;
            return out;
        }
    }
    return out;
}

Int int_pow3(unsigned m) { return Int(static_cast<unsigned long>(m)) * m * m; }

Rational canonical(Rational q) {
    q.canonicalize();
    return q;
}

// log2 enclosure of a positive rational, as doubles for report fields.
std::pair<double, double> log2_fields(const Rational& q) {
    if (!(q > 0)) return {kNegInf, kNegInf};
    const Interval v = Interval::of_rational(q).log2();
    return {v.lo_double(), v.hi_double()};
}

std::pair<double, double> log2_fields(const Int& v) {
    if (v < 1) return {kNegInf, kNegInf};
    return log2_lower_upper(v);
}

// Exact floor of m(m+3)/8 + sqrt(q m^3)/4 for rational q > 0.
std::uint64_t floor_center_plus_radius(unsigned m, const Rational& q) {
    const Int center8 = Int(static_cast<unsigned long>(m)) * (m + 3ul);  // 8 * center
    const Int a_m3 = q.get_num() * int_pow3(m);
    const Int amb = a_m3 * q.get_den();
    if (mpz_perfect_square_p(amb.get_mpz_t())) {
        // radius = sqrt(amb) / (4 den); x is rational
        Int root;
        mpz_sqrt(root.get_mpz_t(), amb.get_mpz_t());
        Rational x = canonical(Rational(center8, 8)) + canonical(Rational(root, 4 * q.get_den()));
        Int floored;
        mpz_fdiv_q(floored.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
        return floored.get_ui();
    }
    // x is irrational here, so <= comparisons cannot tie:
    // k <= x  <=>  8k - 8c <= 2 sqrt(q m^3)  <=>  diff <= 0 or diff^2 den <= 4 a m^3.
    const auto le_x = [&](const Int& k) {
        const Int diff = 8 * k - center8;
        if (diff <= 0) return true;
        return diff * diff * q.get_den() <= 4 * a_m3;
    };
    const double approx = center8.get_d() / 8.0 +
                          std::sqrt(q.get_d() * std::pow(static_cast<double>(m), 3.0)) / 4.0;
    Int k(std::max(0.0, std::floor(approx)));
    while (k > 0 && !le_x(k)) --k;
    while (le_x(k + 1)) ++k;
    return k.get_ui();
}

BoundVerdict decided(std::string subject, std::string params, const CompareOutcome& cmp) {
    BoundVerdict v;
    v.subject = std::move(subject);
    v.params = std::move(params);
    v.lhs_log2_lo = cmp.lhs_lo;
    v.lhs_log2_hi = cmp.lhs_hi;
    v.rhs_log2_lo = cmp.rhs_lo;
    v.rhs_log2_hi = cmp.rhs_hi;
    v.verdict = cmp.verdict;
    return v;
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "Indeterminate";
}

std::string verdicts_to_csv(const std::vector<BoundVerdict>& rows) {
    std::string out = "subject,params,lhs_log2_lo,lhs_log2_hi,rhs_log2_lo,rhs_log2_hi,verdict\n";
    for (const BoundVerdict& r : rows) {
        out += r.subject;
        out += ',';
        out += r.params;
        out += ',';
        out += fmt17(r.lhs_log2_lo);
        out += ',';
        out += fmt17(r.lhs_log2_hi);
        out += ',';
        out += fmt17(r.rhs_log2_lo);
        out += ',';
        out += fmt17(r.rhs_log2_hi);
        out += ',';
        out += to_string(r.verdict);
        out += '\n';
    }
    return out;
}

std::string verdicts_to_json(const std::vector<BoundVerdict>& rows) {
    ordered_json arr = ordered_json::array();
    for (const BoundVerdict& r : rows) {
        ordered_json row;
        row["subject"] = r.subject;
        row["params"] = r.params;
        row["lhs_log2_lo"] = fmt17(r.lhs_log2_lo);
        row["lhs_log2_hi"] = fmt17(r.lhs_log2_hi);
        row["rhs_log2_lo"] = fmt17(r.rhs_log2_lo);
        row["rhs_log2_hi"] = fmt17(r.rhs_log2_hi);
        row["verdict"] = to_string(r.verdict);
        if (!r.precondition_met) row["precondition_met"] = false;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

Constants Constants::make(mpfr_prec_t prec) {
    Constants c{Interval(prec), Interval(prec), Interval(prec), Interval(prec), Interval(prec)};
    const Interval ln2 = Interval::log_of_2(prec);
    c.c_star = Interval::of_ulong(8, prec).sqrt() * ln2;
    const Interval pi = Interval::pi(prec);
    c.c_upper = Interval::of_ulong(2, prec) * (pi * pi / Interval::of_ulong(6, prec)).sqrt();
    c.c_explicit = Interval::of_rational(canonical(Rational(8, 3)), prec) * ln2;
    c.d_opt = Interval::of_ulong(3, prec).sqrt();
    c.window_factor = Interval::of_ulong(2, prec) / (Interval::of_ulong(3, prec) * c.d_opt);
    return c;
}

IntegerRange window(unsigned m, const Rational& d_squared) {
    if (m < 3) throw DomainError("window requires m >= 3 (Var N <= m^3/16 needs it)");
    if (!(d_squared > 0)) throw DomainError("window needs d > 0");

    const Int center8 = Int(static_cast<unsigned long>(m)) * (m + 3ul);
    const Int rhs = 4 * d_squared.get_num() * int_pow3(m);
    const Int den = d_squared.get_den();
    const auto inside = [&](std::uint64_t n) {
        const Int diff = 8 * Int(static_cast<unsigned long>(n)) - center8;
        return diff * diff * den < rhs;
    };

    const double center = center8.get_d() / 8.0;
    const double radius =
        std::sqrt(d_squared.get_d() * std::pow(static_cast<double>(m), 3.0)) / 4.0;
    const std::uint64_t start =
        center > radius + 4.0 ? static_cast<std::uint64_t>(center - radius - 4.0) : 0;
    const std::uint64_t guard = static_cast<std::uint64_t>(center + radius + 5.0);

    std::uint64_t lo = start;
    while (lo <= guard && !inside(lo)) ++lo;
    if (lo > guard) return IntegerRange{1, 0};  // empty
    std::uint64_t hi = guard;
    while (hi > lo && !inside(hi)) --hi;
    return IntegerRange{lo, hi};
}

BoundVerdict check_window_sum(unsigned m, const Rational& d_squared, const CountTable& table) {
    const IntegerRange range = window(m, d_squared);
    if (!range.empty() && range.hi > table.max_n())
        throw OutOfRange("window [" + std::to_string(range.lo) + "," + std::to_string(range.hi) +
                         "] extends past table max_n=" + std::to_string(table.max_n()));

    Int sum = 0;
    for (std::uint64_t n = range.lo; !range.empty() && n <= range.hi; ++n) sum += table.at(n);

    Rational rhs = Rational(Int(1) << m) * canonical(d_squared - 1) / d_squared;
    rhs.canonicalize();

    BoundVerdict v;
    v.subject = "window-sum";
    v.params = "m=" + std::to_string(m) + ";d2=" + to_fraction_string(d_squared);
    v.verdict = Rational(sum) > rhs ? Verdict::Holds : Verdict::Fails;
    std::tie(v.lhs_log2_lo, v.lhs_log2_hi) = log2_fields(sum);
    std::tie(v.rhs_log2_lo, v.rhs_log2_hi) = log2_fields(rhs);
    return v;
}

std::uint64_t pointwise_argument(unsigned m, const Rational& d_squared) {
    if (m < 3) throw DomainError("pointwise bound requires m >= 3");
    if (!(d_squared > 0)) throw DomainError("pointwise bound needs d > 0");
    return floor_center_plus_radius(m, d_squared);
}

BoundVerdict check_pointwise(unsigned m, const Rational& d_squared, const CountTable& table) {
    const std::uint64_t arg = pointwise_argument(m, d_squared);
    const Int& p = table.at(arg);
    const std::string params = "m=" + std::to_string(m) + ";d2=" + to_fraction_string(d_squared);

    if (!(d_squared > 1)) {
        // RHS <= 0: holds vacuously.
        BoundVerdict v;
        v.subject = "pointwise";
        v.params = params;
        v.verdict = Verdict::Holds;
        std::tie(v.lhs_log2_lo, v.lhs_log2_hi) = log2_fields(p);
        v.rhs_log2_lo = v.rhs_log2_hi = kNegInf;
        return v;
    }

    const Rational fraction = canonical(canonical(d_squared - 1) / d_squared);  // 1 - 1/d^2
    const auto lhs_at = [&](mpfr_prec_t prec) { return Interval::of_int(p, prec).log2(); };
    const auto rhs_at = [&](mpfr_prec_t prec) {
        // (m+1) + log2(1 - 1/d^2) - (1/2) log2(d^2) - (3/2) log2(m)
        return Interval::of_ulong(m + 1ul, prec) + Interval::of_rational(fraction, prec).log2() -
               Interval::of_rational(canonical(Rational(1, 2)), prec) *
                   Interval::of_rational(d_squared, prec).log2() -
               Interval::of_rational(canonical(Rational(3, 2)), prec) *
                   Interval::of_ulong(m, prec).log2();
    };
    CompareOutcome cmp = compare_with_escalation(Rel::Greater, lhs_at, rhs_at);
    if (cmp.verdict == Verdict::Indeterminate) {
        // Exact tie-break: p > RHS  <=>  p^2 a^3 m^3 > 4^{m+1} (a-b)^2 b.
        const Int a = d_squared.get_num(), b = d_squared.get_den();
        const Int lhs = p * p * a * a * a * int_pow3(m);
        const Int rhs = (Int(1) << (2 * m + 2)) * (a - b) * (a - b) * b;
        cmp.verdict = lhs > rhs ? Verdict::Holds : Verdict::Fails;
    }
    return decided("pointwise", params, cmp);
}

OptimalD optimal_d(mpfr_prec_t prec) {
    OptimalD out{Interval(prec), Interval(prec), 0.0, 0.0};
    out.d = Interval::of_ulong(3, prec).sqrt();
    out.value = Interval::of_ulong(2, prec) / (Interval::of_ulong(3, prec) * out.d);

    // Grid scan of f(d) = (1/d)(1 - 1/d^2) over [1.01, 10], step 1e-4.
    const double step = 1e-4;
    const long steps = static_cast<long>((10.0 - 1.01) / step);
    double best = -std::numeric_limits<double>::infinity(), best_d = 0;
    for (long i = 0; i <= steps; ++i) {
        const double d = 1.01 + static_cast<double>(i) * step;
        const double f = (1.0 / d) * (1.0 - 1.0 / (d * d));
        if (f > best) {
            best = f;
            best_d = d;
        }
    }
    out.scan_argmax = best_d;
    out.scan_max = best;
    return out;
}

EtaThreshold eta_threshold(const Rational& eta) {
    if (!(eta > 0)) throw DomainError("eta must be positive");
    const Int& a = eta.get_num();
    const Int& b = eta.get_den();
    // pred(m): eta m^2 - 3m > 0 and 12 m^3 < (eta m^2 - 3m)^2, cleared of b.
    const auto pred = [&](const Int& m) {
        const Int t = a * m * m - 3 * b * m;
        if (t <= 0) return false;
        return 12 * m * m * m * b * b < t * t;
    };

    Int m;
    const double e = eta.get_d();
    const double root = (std::sqrt(3.0) + std::sqrt(3.0 + 3.0 * e)) / e;
    const double est = root * root;
    if (std::isfinite(est) && est < 9e15) {
        m = Int(std::max(3.0, std::floor(est)));
        while (m > 3 && pred(m - 1)) --m;
        while (!pred(m)) ++m;
    } else {
        // pred has a single false->true transition in m, so bisection is sound.
        Int lo = 3, hi = 4;
        while (!pred(hi)) {
            hi *= 2;
            if (hi > Int("1000000000000000000"))
                throw DomainError("eta too small: threshold exceeds 10^18");
        }
        while (lo < hi) {
            Int mid = (lo + hi) / 2;
            if (pred(mid))
                hi = mid;
            else
                lo = mid + 1;
        }
        m = lo;
    }

    EtaThreshold out;
    out.threshold = m.get_ui();
    out.next_100_hold = true;
    for (unsigned i = 1; i <= 100; ++i)
        if (!pred(m + i)) {
            out.next_100_hold = false;
            break;
        }
    return out;
}

BoundVerdict check_dagger(unsigned m, const Rational& eta, const CountTable& table) {
    if (m < 3) throw DomainError("dagger check requires m >= 3");
    if (!(eta > 0)) throw DomainError("eta must be positive");

    // arg = floor(m^2 (1 + eta) / 8)
    Rational x = Rational(Int(static_cast<unsigned long>(m)) * m) * canonical(eta + 1) / 8;
    x.canonicalize();
    Int floored;
    mpz_fdiv_q(floored.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    const std::uint64_t arg = floored.get_ui();
    const Int& p = table.at(arg);

    const std::string params = "m=" + std::to_string(m) + ";eta=" + to_fraction_string(eta);
    const auto lhs_at = [&](mpfr_prec_t prec) { return Interval::of_int(p, prec).log2(); };
    const auto rhs_at = [&](mpfr_prec_t prec) {
        // m + 2 - (3/2) log2(3m)
        return Interval::of_ulong(m + 2ul, prec) -
               Interval::of_rational(canonical(Rational(3, 2)), prec) *
                   Interval::of_ulong(3ul * m, prec).log2();
    };
    CompareOutcome cmp = compare_with_escalation(Rel::Greater, lhs_at, rhs_at);
    if (cmp.verdict == Verdict::Indeterminate) {
        // Exact tie-break: p > RHS  <=>  27 p^2 m^3 > 2^{2m+4}.
        cmp.verdict = 27 * p * p * int_pow3(m) > (Int(1) << (2 * m + 4)) ? Verdict::Holds
                                                                         : Verdict::Fails;
    }
    BoundVerdict v = decided("dagger", params, cmp);
    v.precondition_met = m >= eta_threshold(eta).threshold;
    return v;
}

Interval explicit_bound_log2(std::uint64_t n, mpfr_prec_t prec) {
    if (n < 1) throw DomainError("explicit bound is evaluated for n >= 1");
    const Interval root_n = Interval::of_ulong(n, prec).sqrt();
    return Interval::of_rational(canonical(Rational(8, 3)), prec) * root_n -
           Interval::of_rational(canonical(Rational(5, 2)), prec) -
           Interval::of_rational(canonical(Rational(3, 4)), prec) *
               Interval::of_ulong(n, prec).log2();
}

Interval explicit_bound_value(std::uint64_t n, mpfr_prec_t prec) {
    return explicit_bound_log2(n, prec).exp2();
}

BoundVerdict check_explicit(std::uint64_t n, const CountTable& table) {
    const Int& p = table.at(n);
    const auto lhs_at = [&](mpfr_prec_t prec) { return Interval::of_int(p, prec).log2(); };
    const auto rhs_at = [&](mpfr_prec_t prec) { return explicit_bound_log2(n, prec); };
    // The bound is irrational for every n, so escalation always separates.
    const CompareOutcome cmp = compare_with_escalation(Rel::Geq, lhs_at, rhs_at);
    return decided("explicit", "n=" + std::to_string(n), cmp);
}

SweepSummary verify_explicit_bound(std::uint64_t n_lo, std::uint64_t n_hi,
                                   const CountTable& table, bool keep_rows) {
    if (n_lo < 2) throw OutOfRange("explicit-bound sweep starts at n >= 2");
    if (n_lo > n_hi) throw OutOfRange("empty sweep range");
    if (n_hi > table.max_n()) throw OutOfRange("sweep extends past table max_n");

    SweepSummary out;
    if (keep_rows) out.rows.reserve(n_hi - n_lo + 1);
    for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
        BoundVerdict v = check_explicit(n, table);
        switch (v.verdict) {
            case Verdict::Holds: ++out.holds; break;
            case Verdict::Fails: ++out.fails; break;
            case Verdict::Indeterminate: ++out.indeterminate; break;
        }
        const double margin = v.lhs_log2_lo - v.rhs_log2_hi;
        if (margin < out.min_margin_log2) {
            out.min_margin_log2 = margin;
            out.min_margin_at = n;
        }
        if (keep_rows) out.rows.push_back(std::move(v));
    }
    return out;
}

std::vector<RatioRow> ratio_table(const std::vector<std::uint64_t>& ns, const CountTable& table) {
    std::vector<RatioRow> rows;
    rows.reserve(ns.size());
    for (std::uint64_t n : ns) {
        if (n < 1) throw OutOfRange("ratio rows need n >= 1");
        const Int& p = table.at(n);
        RatioRow row;
        row.n = n;
        bool above_resolved = false, upper_resolved = false;
        for (mpfr_prec_t prec = kBasePrecision; prec <= 768; prec *= 2) {
            const Interval ratio =
                Interval::of_int(p, prec).ln() / Interval::of_ulong(n, prec).sqrt();
            const Constants consts = Constants::make(prec);
            row.ratio_lo = ratio.lo_double();
            row.ratio_hi = ratio.hi_double();
            if (!above_resolved) {
                if (ratio.certainly_greater(consts.c_star)) {
                    row.above_c_star = true;
                    above_resolved = true;
                } else if (ratio.certainly_leq(consts.c_star)) {
                    row.above_c_star = false;
                    above_resolved = true;
                }
            }
            if (!upper_resolved) {
                if (ratio.certainly_leq(consts.c_upper)) {
                    row.at_most_c_upper = true;
                    upper_resolved = true;
                } else if (ratio.certainly_greater(consts.c_upper)) {
                    row.at_most_c_upper = false;
                    upper_resolved = true;
                }
            }
            if (above_resolved && upper_resolved) break;
        }
        rows.push_back(row);
    }
    return rows;
}

BoundVerdict upper_bound_check(std::uint64_t n, const CountTable& table) {
    if (n < 1) throw OutOfRange("upper bound check needs n >= 1");
    const Int& p = table.at(n);
    // Compare in natural-log space; report fields stay in that scale.
    const auto lhs_at = [&](mpfr_prec_t prec) -> Interval {
        if (p == 1) return Interval::of_ulong(0, prec);
        return Interval::of_int(p, prec).ln();
    };
    const auto rhs_at = [&](mpfr_prec_t prec) {
        return Constants::make(prec).c_upper * Interval::of_ulong(n, prec).sqrt();
    };
    const CompareOutcome cmp = compare_with_escalation(Rel::Leq, lhs_at, rhs_at);
    return decided("upper", "n=" + std::to_string(n), cmp);
}

StarThreshold star_threshold(double epsilon, const CountTable& table) {
    if (!(epsilon > 0)) throw DomainError("epsilon must be positive");
    const Rational one_plus = canonical(rational_from_double(epsilon) + 1);

    StarThreshold out;
    out.scanned_max = table.max_n();
    const auto rhs_at = [&](mpfr_prec_t prec) {
        return Interval::of_ulong(8, prec).sqrt() * Interval::log_of_2(prec) /
               Interval::of_rational(one_plus, prec);
    };
    for (std::uint64_t n = table.max_n(); n >= 1; --n) {
        const Int& p = table.at(n);
        const auto lhs_at = [&](mpfr_prec_t prec) -> Interval {
            if (p == 1) return Interval::of_ulong(0, prec);
            return Interval::of_int(p, prec).ln() / Interval::of_ulong(n, prec).sqrt();
        };
        CompareOutcome cmp = compare_with_escalation(Rel::Greater, lhs_at, rhs_at);
        if (cmp.verdict == Verdict::Indeterminate) {
            // Equality is possible only when p is a power of two; decide exactly.
            if (mpz_popcount(p.get_mpz_t()) == 1) {
                const unsigned long k = mpz_sizeinbase(p.get_mpz_t(), 2) - 1;
                const Rational lhs = Rational(Int(k) * Int(k)) * one_plus * one_plus;
                cmp.verdict = lhs > Rational(8 * Int(static_cast<unsigned long>(n)))
                                  ? Verdict::Holds
                                  : Verdict::Fails;
            } else {
                out.complete = false;
                out.last_failure = n;
                out.minimal_n = n + 1;
                return out;
            }
        }
        if (cmp.verdict == Verdict::Fails) {
            out.last_failure = n;
            out.minimal_n = n + 1;
            return out;
        }
    }
    out.last_failure = 0;
    out.minimal_n = 1;
    return out;
}

} // namespace partlab
