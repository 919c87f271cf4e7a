#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace polytors {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Thrown when two independently derived values for the same homology degree
/// cannot be reconciled (e.g. a complete table entry vs. a predicted summand).
class consistency_error : public std::runtime_error {
public:
    consistency_error(u64 degree, std::string lhs, std::string rhs)
        : std::runtime_error("inconsistent values in degree " + std::to_string(degree) +
                             ": '" + lhs + "' vs '" + rhs + "'"),
          degree_(degree), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

    u64 degree() const noexcept { return degree_; }
    const std::string& lhs() const noexcept { return lhs_; }
    const std::string& rhs() const noexcept { return rhs_; }

private:
    u64 degree_;
    std::string lhs_, rhs_;
};

// All quantities are exact integers. Arithmetic goes through 128-bit
// intermediates and is narrowed with an explicit range check; overflow is an
// error, never wraparound.

inline u64 narrow(u128 v) {
    if (v > static_cast<u128>(std::numeric_limits<u64>::max()))
        throw std::overflow_error("value exceeds 64-bit range");
    return static_cast<u64>(v);
}

inline u64 checked_add(u64 a, u64 b) { return narrow(static_cast<u128>(a) + b); }
inline u64 checked_mul(u64 a, u64 b) { return narrow(static_cast<u128>(a) * b); }

/// base^exp with overflow check.
inline u64 checked_pow(u64 base, u32 exp) {
    u128 r = 1;
    while (exp--) {
        r *= base;
        if (r > static_cast<u128>(std::numeric_limits<u64>::max()))
            throw std::overflow_error("power exceeds 64-bit range");
    }
    return static_cast<u64>(r);
}

} // namespace polytors
