#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace mallows {

// Unsigned big integer supporting exactly what restricted-set counting
// needs: start at 1, multiply by small factors, print in decimal. Limbs are
// base 10^9, little-endian.
class BigUint {
public:
    BigUint(std::uint64_t v = 0) {
        while (v > 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v % kBase));
            v /= kBase;
        }
    }

    bool is_zero() const noexcept { return limbs_.empty(); }

    // Factor must be < 2^32 so limb * factor + carry fits in 64 bits.
    BigUint& operator*=(std::uint64_t factor) {
        if (factor >= (1ull << 32))
            throw std::invalid_argument("BigUint: factor too large");
        if (factor == 0 || is_zero()) {
            limbs_.clear();
            return *this;
        }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            const std::uint64_t cur = static_cast<std::uint64_t>(limb) * factor + carry;
            limb = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        while (carry > 0) {
            limbs_.push_back(static_cast<std::uint32_t>(carry % kBase));
            carry /= kBase;
        }
        return *this;
    }

    friend bool operator==(const BigUint&, const BigUint&) = default;

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s = std::to_string(limbs_.back());
        char buf[10];
        for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
            std::snprintf(buf, sizeof buf, "%09u", *it);
            s += buf;
        }
        return s;
    }

private:
    static constexpr std::uint64_t kBase = 1000000000ull;
    std::vector<std::uint32_t> limbs_;
};

} // namespace mallows
