// Exact half-integer arithmetic for Maslov/Conley-Zehnder indices.
#pragma once

#include <stdexcept>
#include <string>

namespace rkp {

/// A rational with denominator 2, stored as twice its value.
/// Keeps endpoint half-weights exact (no floating accumulation).
struct HalfInteger {
    int twice = 0;

    static HalfInteger from_halves(int numerator_over_two) { return {numerator_over_two}; }
    static HalfInteger from_integer(int n) { return {2 * n}; }

    double value() const { return twice / 2.0; }
    bool is_integer() const { return twice % 2 == 0; }
    int as_integer() const {
        if (!is_integer()) throw std::logic_error("HalfInteger: not an integer: " + str());
        return twice / 2;
    }

    HalfInteger operator+(const HalfInteger& o) const { return {twice + o.twice}; }
    HalfInteger& operator+=(const HalfInteger& o) {
        twice += o.twice;
        return *this;
    }
    bool operator==(const HalfInteger& o) const { return twice == o.twice; }
    bool operator!=(const HalfInteger& o) const { return twice != o.twice; }

    std::string str() const {
        if (is_integer()) return std::to_string(twice / 2);
        return std::to_string(twice) + "/2";
    }
};

}  // namespace rkp
