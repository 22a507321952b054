#include "partlab/moments.hpp"

#include <nlohmann/json.hpp>

#include "partlab/errors.hpp"

namespace partlab {

namespace {

using ordered_json = nlohmann::ordered_json;

Rational ratio(unsigned long num, unsigned long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Totals over all 2^m sequences; everything fits in 64 bits for m <= 30
// (N <= (m+1)^2/4, so sum of N^2 is at most 2^30 * 240^2 < 2^63).
struct EnumTotals {
    unsigned m = 0;
    std::uint64_t outcomes = 0;  // 2^m
    std::uint64_t sum_size = 0, sum_size_sq = 0;
    std::uint64_t sum_tails = 0, sum_tails_sq = 0;
    std::vector<std::uint64_t> sum_c, sum_c_sq;  // index t-1
    std::vector<std::uint64_t> sum_x, sum_x_sq;
};

void check_cap(unsigned m, unsigned cap) {
    if (m > cap)
        throw CapExceeded("enumeration over 2^m outcomes capped at m=" + std::to_string(cap));
    if (m > 30) throw CapExceeded("enumeration accumulators support m <= 30");
}

EnumTotals enumerate_totals(unsigned m, unsigned cap) {
    check_cap(m, cap);
    EnumTotals t;
    t.m = m;
    t.outcomes = std::uint64_t{1} << m;
    t.sum_c.assign(m, 0);
    t.sum_c_sq.assign(m, 0);
    t.sum_x.assign(m, 0);
    t.sum_x_sq.assign(m, 0);
    for (std::uint64_t w = 0; w < t.outcomes; ++w) {
        std::uint64_t heads = 0, csum = 0;
        for (unsigned flip = 0; flip < m; ++flip) {
            if ((w >> flip) & 1u) {  // bit set = Head
                ++heads;
            } else {
                const std::uint64_t c = heads;
                csum += c;
                t.sum_c[flip] += c;
                t.sum_c_sq[flip] += c * c;
            }
            t.sum_x[flip] += heads;
            t.sum_x_sq[flip] += heads * heads;
        }
        const std::uint64_t tails = m - heads;
        const std::uint64_t size = tails + csum;
        t.sum_size += size;
        t.sum_size_sq += size * size;
        t.sum_tails += tails;
        t.sum_tails_sq += tails * tails;
    }
    return t;
}

Rational mean_of(std::uint64_t sum, std::uint64_t outcomes) { return ratio(sum, outcomes); }

Rational variance_of(std::uint64_t sum, std::uint64_t sum_sq, std::uint64_t outcomes) {
    const Rational mean = ratio(sum, outcomes);
    Rational out = ratio(sum_sq, outcomes) - mean * mean;
    out.canonicalize();
    return out;
}

} // namespace

Rational expected_size(unsigned m) {
    return ratio(static_cast<unsigned long>(m) * (m + 3ul), 8);
}

Rational variance_size(unsigned m) {
    // m^3/48 + m^2/32 + 19m/96
    const Rational mm(static_cast<unsigned long>(m));
    Rational out = mm * mm * mm / 48 + mm * mm / 32 + 19 * mm / 96;
    out.canonicalize();
    return out;
}

Rational variance_crude_bound(unsigned m) {
    if (m < 3) throw DomainError("the crude variance bound m^3/16 is asserted only for m >= 3");
    const Rational mm(static_cast<unsigned long>(m));
    Rational out = mm * mm * mm / 16;
    out.canonicalize();
    return out;
}

std::pair<Rational, Rational> binomial_moments(unsigned t) {
    return {ratio(t, 2), ratio(t, 4)};
}

std::pair<Rational, Rational> contribution_moments(unsigned t) {
    if (t < 1) throw DomainError("contribution moments are defined for t >= 1");
    return {ratio(t - 1, 4), ratio(static_cast<unsigned long>(t) * t - 1, 16)};
}

MomentSummary enumerate_moments(unsigned m, unsigned cap) {
    const EnumTotals t = enumerate_totals(m, cap);
    MomentSummary out;
    out.m = m;
    out.size_mean = mean_of(t.sum_size, t.outcomes);
    out.size_var = variance_of(t.sum_size, t.sum_size_sq, t.outcomes);
    out.tails_mean = mean_of(t.sum_tails, t.outcomes);
    out.tails_var = variance_of(t.sum_tails, t.sum_tails_sq, t.outcomes);
    out.per_flip.reserve(m);
    for (unsigned i = 0; i < m; ++i) {
        PerFlipMoments pf;
        pf.t = i + 1;
        pf.contribution_mean = mean_of(t.sum_c[i], t.outcomes);
        pf.contribution_var = variance_of(t.sum_c[i], t.sum_c_sq[i], t.outcomes);
        pf.heads_mean = mean_of(t.sum_x[i], t.outcomes);
        pf.heads_var = variance_of(t.sum_x[i], t.sum_x_sq[i], t.outcomes);
        out.per_flip.push_back(std::move(pf));
    }
    return out;
}

std::string MomentSummary::to_json() const {
    ordered_json j;
    j["m"] = m;
    j["mean_N"] = to_fraction_string(size_mean);
    j["var_N"] = to_fraction_string(size_var);
    j["mean_Y"] = to_fraction_string(tails_mean);
    j["var_Y"] = to_fraction_string(tails_var);
    ordered_json per = ordered_json::array();
    for (const PerFlipMoments& pf : per_flip) {
        ordered_json row;
        row["t"] = pf.t;
        row["mean_C"] = to_fraction_string(pf.contribution_mean);
        row["var_C"] = to_fraction_string(pf.contribution_var);
        row["mean_X"] = to_fraction_string(pf.heads_mean);
        row["var_X"] = to_fraction_string(pf.heads_var);
        per.push_back(std::move(row));
    }
    j["per_t"] = std::move(per);
    return j.dump(2) + "\n";
}

std::vector<CovarianceEntry> covariance_report(unsigned m, unsigned cap) {
    check_cap(m, cap);
    const std::uint64_t outcomes = std::uint64_t{1} << m;

    std::vector<std::uint64_t> c(m), x(m);
    std::vector<std::uint64_t> sum_c(m, 0), sum_x(m, 0);
    std::uint64_t sum_y = 0;
    // Pair sums, flattened t-major.
    std::vector<std::uint64_t> sum_cx(static_cast<std::size_t>(m) * m, 0);
    std::vector<std::uint64_t> sum_cc(static_cast<std::size_t>(m) * m, 0);
    std::vector<std::uint64_t> sum_cy(m, 0);

    for (std::uint64_t w = 0; w < outcomes; ++w) {
        std::uint64_t heads = 0;
        for (unsigned flip = 0; flip < m; ++flip) {
            if ((w >> flip) & 1u) {
                c[flip] = 0;
                ++heads;
            } else {
                c[flip] = heads;
            }
            x[flip] = heads;
        }
        const std::uint64_t y = m - heads;
        sum_y += y;
        for (unsigned t = 0; t < m; ++t) {
            sum_c[t] += c[t];
            sum_x[t] += x[t];
            sum_cy[t] += c[t] * y;
            if (c[t] == 0) continue;
            for (unsigned u = t; u < m; ++u) {
                sum_cx[static_cast<std::size_t>(t) * m + u] += c[t] * x[u];
                if (u > t) sum_cc[static_cast<std::size_t>(t) * m + u] += c[t] * c[u];
            }
        }
    }

    const auto cov = [&](std::uint64_t sum_ab, std::uint64_t sum_a, std::uint64_t sum_b) {
        Rational out = ratio(sum_ab, outcomes) -
                       ratio(sum_a, outcomes) * ratio(sum_b, outcomes);
        out.canonicalize();
        return out;
    };

    std::vector<CovarianceEntry> entries;
    for (unsigned t = 0; t < m; ++t)
        for (unsigned u = t; u < m; ++u)
            entries.push_back({"Cov(C_" + std::to_string(t + 1) + ",X_" + std::to_string(u + 1) +
                                   ")",
                               t + 1, u + 1,
                               cov(sum_cx[static_cast<std::size_t>(t) * m + u], sum_c[t],
                                   sum_x[u])});
    for (unsigned t = 0; t < m; ++t)
        for (unsigned u = t + 1; u < m; ++u)
            entries.push_back({"Cov(C_" + std::to_string(t + 1) + ",C_" + std::to_string(u + 1) +
                                   ")",
                               t + 1, u + 1,
                               cov(sum_cc[static_cast<std::size_t>(t) * m + u], sum_c[t],
                                   sum_c[u])});
    for (unsigned t = 0; t < m; ++t)
        entries.push_back({"Cov(C_" + std::to_string(t + 1) + ",Y)", t + 1, 0,
                           cov(sum_cy[t], sum_c[t], sum_y)});
    return entries;
}

std::string covariance_report_to_json(const std::vector<CovarianceEntry>& entries) {
    ordered_json arr = ordered_json::array();
    for (const CovarianceEntry& e : entries) {
        ordered_json row;
        row["label"] = e.label;
        row["t"] = e.t;
        if (e.u != 0) row["u"] = e.u;
        row["cov"] = to_fraction_string(e.covariance);
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

std::optional<DependenceWitness> find_dependence_witness(unsigned m, unsigned cap) {
    check_cap(m, cap);
    const std::uint64_t outcomes = std::uint64_t{1} << m;

    // Counts per t: C_t >= 1; per u: C_u = 0; joint for t < u.
    std::vector<std::uint64_t> pos(m, 0), zero(m, 0);
    std::vector<std::uint64_t> joint(static_cast<std::size_t>(m) * m, 0);
    std::vector<std::uint64_t> c(m);
    for (std::uint64_t w = 0; w < outcomes; ++w) {
        std::uint64_t heads = 0;
        for (unsigned flip = 0; flip < m; ++flip) {
            if ((w >> flip) & 1u) {
                c[flip] = 0;
                ++heads;
            } else {
                c[flip] = heads;
            }
        }
        for (unsigned t = 0; t < m; ++t) {
            if (c[t] >= 1) {
                ++pos[t];
                for (unsigned u = t + 1; u < m; ++u)
                    if (c[u] == 0) ++joint[static_cast<std::size_t>(t) * m + u];
            } else if (c[t] == 0) {
                ++zero[t];
            }
        }
    }

    for (unsigned t = 0; t < m; ++t) {
        if (pos[t] == 0) continue;
        for (unsigned u = t + 1; u < m; ++u) {
            const std::uint64_t j = joint[static_cast<std::size_t>(t) * m + u];
            // P[C_u=0 | C_t>=1] != P[C_u=0]  <=>  j * 2^m != pos[t] * zero[u]
            if (Int(j) * Int(outcomes) != Int(pos[t]) * Int(zero[u])) {
                DependenceWitness w;
                w.t = t + 1;
                w.u = u + 1;
                w.conditional_zero = ratio(j, pos[t]);
                w.marginal_zero = ratio(zero[u], outcomes);
                return w;
            }
        }
    }
    return std::nullopt;
}

} // namespace partlab
