#pragma once

/// Brute-force partition combinatorics: enumeration, hook numbers, t-core
/// detection.  This module is the slow, obviously-correct counterpart to the
/// generating function pipeline; everything here works directly on Young
/// diagrams.

#include <cstdint>
#include <functional>
#include <vector>

namespace tcore {

/// A partition as its weakly decreasing list of positive parts.  The empty
/// list is the empty partition of 0.
struct Partition {
    Partition() = default;
    explicit Partition(std::vector<std::uint32_t> parts);

    std::uint64_t weight() const;
    std::size_t rows() const { return parts.size(); }

    std::vector<std::uint32_t> parts;

    bool operator==(const Partition&) const = default;
};

/// Largest n for which exhaustive enumeration is allowed by default; p(60)
/// is just under a million partitions.
inline constexpr std::uint32_t kEnumerationBound = 60;

/// Visit every partition of n in reverse lexicographic order, starting at
/// (n) and ending at (1, 1, ..., 1).
void for_each_partition(std::uint32_t n,
                        const std::function<void(const Partition&)>& visit);

/// All partitions of n in reverse lexicographic order.  Refuses n > bound:
/// the list grows faster than anything downstream can use.
std::vector<Partition> enumerate_partitions(std::uint32_t n,
                                            std::uint32_t bound = kEnumerationBound);

/// Hook lengths of every cell, row by row.  Cell (i, j) has hook
/// lambda_i + lambda'_j - i - j + 1 (1-based); the column heights are
/// recomputed from the parts on each call.
std::vector<std::uint32_t> hook_numbers(const Partition& p);

/// True when no hook length is divisible by t.  Requires t >= 2.
bool is_t_core(const Partition& p, std::uint32_t t);

/// Transpose of the Young diagram.
Partition conjugate(const Partition& p);

/// Number of t-core partitions of n by exhaustive enumeration.  Requires
/// t >= 2 and n <= bound.
std::uint64_t a_t_bruteforce(std::uint32_t n, std::uint32_t t,
                             std::uint32_t bound = kEnumerationBound);

} // namespace tcore
