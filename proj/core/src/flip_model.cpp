#include "partlab/flip_model.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <numeric>

#include "partlab/errors.hpp"

namespace partlab {

CoinSequence CoinSequence::from_string(std::string_view text) {
    std::vector<Flip> flips;
    flips.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'H': flips.push_back(Flip::Head); break;
            case 'T': flips.push_back(Flip::Tail); break;
            default:
                throw ParseError(std::string("flip string may contain only 'H' and 'T', got '") +
                                 c + "'");
        }
    }
    return CoinSequence(std::move(flips));
}

std::string CoinSequence::to_string() const {
    std::string out;
    out.reserve(flips_.size());
    for (Flip f : flips_) out.push_back(f == Flip::Head ? 'H' : 'T');
    return out;
}

Partition::Partition(std::vector<std::uint64_t> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] == 0) throw DomainError("partition parts must be positive");
        if (i > 0 && parts_[i - 1] < parts_[i])
            throw DomainError("partition parts must be weakly decreasing");
    }
    size_ = std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
}

Partition Partition::from_string(std::string_view text) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        throw ParseError("partition text must look like \"[6,4,2,2]\"");
    std::string_view body = text.substr(1, text.size() - 2);
    std::vector<std::uint64_t> parts;
    while (!body.empty()) {
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
        if (ec != std::errc() || ptr == body.data())
            throw ParseError("bad partition part in \"" + std::string(text) + "\"");
        parts.push_back(value);
        body.remove_prefix(static_cast<std::size_t>(ptr - body.data()));
        if (!body.empty()) {
            if (body.front() != ',') throw ParseError("expected ',' between partition parts");
            body.remove_prefix(1);
            if (body.empty()) throw ParseError("trailing ',' in partition text");
        }
    }
    return Partition(std::move(parts));
}

std::string Partition::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += std::to_string(parts_[i]);
    }
    out.push_back(']');
    return out;
}

Partition partition_from_flips(const CoinSequence& seq) {
    std::vector<std::uint64_t> parts;
    std::uint64_t heads = 0;
    for (Flip f : seq.flips()) {
        if (f == Flip::Head) {
            ++heads;
        } else {
            parts.push_back(heads + 1);
        }
    }
    // The tail-order construction yields weakly increasing parts.
    std::reverse(parts.begin(), parts.end());
    return Partition(std::move(parts));
}

FlipProcess flip_process(const CoinSequence& seq) {
    const std::size_t m = seq.flip_count();
    FlipProcess out;
    out.heads_prefix.reserve(m + 1);
    out.heads_prefix.push_back(0);
    out.contributions.reserve(m);
    std::uint64_t heads = 0;
    std::uint64_t contribution_sum = 0;
    for (Flip f : seq.flips()) {
        if (f == Flip::Head) {
            out.contributions.push_back(0);
            ++heads;
        } else {
            out.contributions.push_back(heads);
            contribution_sum += heads;
        }
        out.heads_prefix.push_back(heads);
    }
    out.tails_total = m - heads;
    out.total_size = out.tails_total + contribution_sum;
    return out;
}

CoinSequence flips_from_partition(const Partition& p, std::size_t m) {
    const std::size_t length = p.length();
    if (length > m)
        throw NotRepresentable("partition has more parts than flips");
    if (length > 0 && p.parts().front() > m - length + 1)
        throw NotRepresentable("largest part needs more heads than m allows");

    std::vector<Flip> flips;
    flips.reserve(m);
    std::uint64_t heads = 0;
    // Parts in increasing order; each tail goes after v-1 cumulative heads.
    for (auto it = p.parts().rbegin(); it != p.parts().rend(); ++it) {
        const std::uint64_t needed = *it - 1;
        for (; heads < needed; ++heads) flips.push_back(Flip::Head);
        flips.push_back(Flip::Tail);
    }
    while (flips.size() < m) flips.push_back(Flip::Head);
    return CoinSequence(std::move(flips));
}

} // namespace partlab
