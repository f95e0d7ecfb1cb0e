#include "tcore/partition.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tcore {

Partition::Partition(std::vector<std::uint32_t> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] == 0)
            throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts[i] > parts[i - 1])
            throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

std::uint64_t Partition::weight() const {
    return std::accumulate(parts.begin(), parts.end(), std::uint64_t(0));
}

namespace {

void walk(std::uint32_t remaining, std::uint32_t max_part, Partition& scratch,
          const std::function<void(const Partition&)>& visit) {
    if (remaining == 0) {
        visit(scratch);
        return;
    }
    for (std::uint32_t p = std::min(max_part, remaining); p >= 1; --p) {
        scratch.parts.push_back(p);
        walk(remaining - p, p, scratch, visit);
        scratch.parts.pop_back();
    }
}

} // namespace

void for_each_partition(std::uint32_t n,
                        const std::function<void(const Partition&)>& visit) {
    Partition scratch;
    walk(n, n == 0 ? 1 : n, scratch, visit);
}

std::vector<Partition> enumerate_partitions(std::uint32_t n, std::uint32_t bound) {
    if (n > bound)
        throw std::invalid_argument("enumerate_partitions: n = " + std::to_string(n) +
                                    " exceeds bound " + std::to_string(bound));
    std::vector<Partition> out;
    for_each_partition(n, [&](const Partition& p) { out.push_back(p); });
    return out;
}

namespace {

// Column heights lambda'_1, ..., lambda'_{lambda_1}.
std::vector<std::uint32_t> column_heights(const Partition& p) {
    if (p.parts.empty())
        return {};
    std::vector<std::uint32_t> cols(p.parts[0], 0);
    for (std::uint32_t part : p.parts)
        for (std::uint32_t j = 0; j < part; ++j)
            ++cols[j];
    return cols;
}

} // namespace

std::vector<std::uint32_t> hook_numbers(const Partition& p) {
    std::vector<std::uint32_t> cols = column_heights(p);
    std::vector<std::uint32_t> hooks;
    hooks.reserve(p.weight());
    for (std::size_t i = 0; i < p.parts.size(); ++i)
        for (std::uint32_t j = 0; j < p.parts[i]; ++j)
            hooks.push_back(p.parts[i] + cols[j] - static_cast<std::uint32_t>(i) - j - 1);
    return hooks;
}

bool is_t_core(const Partition& p, std::uint32_t t) {
    if (t < 2)
        throw std::invalid_argument("is_t_core: t must be at least 2");
    std::vector<std::uint32_t> cols = column_heights(p);
    for (std::size_t i = 0; i < p.parts.size(); ++i)
        for (std::uint32_t j = 0; j < p.parts[i]; ++j) {
            std::uint32_t hook =
                p.parts[i] + cols[j] - static_cast<std::uint32_t>(i) - j - 1;
            if (hook % t == 0)
                return false;
        }
    return true;
}

Partition conjugate(const Partition& p) {
    return Partition(column_heights(p));
}

std::uint64_t a_t_bruteforce(std::uint32_t n, std::uint32_t t, std::uint32_t bound) {
    if (t < 2)
        throw std::invalid_argument("a_t_bruteforce: t must be at least 2");
    if (n > bound)
        throw std::invalid_argument("a_t_bruteforce: n = " + std::to_string(n) +
                                    " exceeds bound " + std::to_string(bound));
    std::uint64_t count = 0;
    for_each_partition(n, [&](const Partition& p) {
        if (is_t_core(p, t))
            ++count;
    });
    return count;
}

} // namespace tcore
