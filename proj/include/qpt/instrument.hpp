#pragma once

#include <cstdint>

namespace qpt {

// Drop-in scalar that counts every additive operation. Instantiating
// dpt_forward<counting_scalar> gives the exact add/subtract cost of the
// fast transform (expected: 2N-2).
struct counting_scalar {
    double value = 0.0;

    static inline std::uint64_t additions = 0;
    static void reset() { additions = 0; }

    counting_scalar() = default;
    counting_scalar(double v) : value(v) {}

    friend counting_scalar operator+(counting_scalar a, counting_scalar b) {
        ++additions;
        return {a.value + b.value};
    }
    friend counting_scalar operator-(counting_scalar a, counting_scalar b) {
        ++additions;
        return {a.value - b.value};
    }
    friend bool operator==(counting_scalar a, counting_scalar b) { return a.value == b.value; }
};

}  // namespace qpt
