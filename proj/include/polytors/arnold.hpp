#pragma once

#include <array>
#include <optional>

#include "polytors/common.hpp"

namespace polytors {

/// Order of a cyclic group: either infinite (Z) or finite of order >= 1,
/// where order 1 encodes the trivial group.
struct CyclicOrder {
    bool is_infinite = false;
    u64 order = 1;

    static CyclicOrder infinite() { return {true, 0}; }
    static CyclicOrder cyclic(u64 n) { return {false, n}; }

    bool operator==(const CyclicOrder&) const = default;
};

/// a / gcd(a, b). Both arguments must be positive.
u64 a_over_b(u64 a, u64 b);

/// One row of the (k, l) order table for H_j(P_{k,2}^l; Z),
/// 2l+1 <= j <= 2l+5. Rows are indexed by the k-bracket:
/// bracket b in 0..3 covers k in {2l+2+2b, 2l+3+2b}; bracket 4 covers
/// all k >= 2l+10 (the stable range).
struct ArnoldRow {
    u64 l = 1;
    int bracket = 0;             ///< 0..4, 4 = stable
    u64 k_min = 0;               ///< smallest k of the bracket
    std::optional<u64> k_max;    ///< largest k, nullopt for the stable bracket
    std::array<CyclicOrder, 5> orders;  ///< columns j = 2l+1 .. 2l+5

    bool operator==(const ArnoldRow&) const = default;
};

/// Bracket index for a given k; throws std::domain_error when k < 2l+2
/// (the space is contractible there and has no table row).
int bracket_for_k(u64 l, u64 k);

/// Table row for the bracket containing k.
ArnoldRow table_orders(u64 l, u64 k);

/// Stable-range row (k >= 2l+10).
ArnoldRow table_orders_stable(u64 l);

/// All five rows, bracket 0 first.
std::array<ArnoldRow, 5> full_table(u64 l);

} // namespace polytors
