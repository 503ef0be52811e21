#ifndef BLOCH_SQUARE_CLASS_HPP
#define BLOCH_SQUARE_CLASS_HPP

#include "bloch/field.hpp"

namespace bloch {

/// Square class <x> in F^x/(F^x)^2. Over the rationals: sign bit plus the
/// primes with odd exponent. Over a tower: sign bit only (exactly two
/// classes, since every positive element is a square).
struct SquareClass {
    bool neg = false;
    std::vector<Int> primes;  // sorted, distinct; always empty for tower classes

    bool is_one() const { return !neg && primes.empty(); }

    friend bool operator==(const SquareClass& a, const SquareClass& b) {
        return a.neg == b.neg && a.primes == b.primes;
    }
    friend bool operator<(const SquareClass& a, const SquareClass& b) {
        if (a.primes.size() != b.primes.size()) return a.primes.size() < b.primes.size();
        if (a.primes != b.primes) return a.primes < b.primes;
        return a.neg < b.neg;
    }
    /// Group law: product of classes (XOR of sign bits, symmetric difference
    /// of prime supports). Every class is its own inverse.
    friend SquareClass operator*(const SquareClass& a, const SquareClass& b);
};

inline const SquareClass kClassOne{};
inline const SquareClass kClassMinusOne{true, {}};

SquareClass square_class(const TowerElement& x, Backend backend);
SquareClass square_class(const Rat& q);  // rational backend

std::string class_to_string(const SquareClass& c);

}  // namespace bloch

#endif
