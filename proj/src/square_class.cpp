#include "bloch/square_class.hpp"

#include <algorithm>

namespace bloch {

SquareClass operator*(const SquareClass& a, const SquareClass& b) {
    SquareClass r;
    r.neg = a.neg != b.neg;
    std::set_symmetric_difference(a.primes.begin(), a.primes.end(), b.primes.begin(),
                                  b.primes.end(), std::back_inserter(r.primes));
    return r;
}

SquareClass square_class(const Rat& q) {
    if (q == 0) throw Error("square class of zero");
    SquareClass r;
    r.neg = q < 0;
    for (auto& [p, e] : factorize(numerator(q) * denominator(q)))
        if (e % 2) r.primes.push_back(p);
    std::sort(r.primes.begin(), r.primes.end());
    return r;
}

SquareClass square_class(const TowerElement& x, Backend backend) {
    if (x.is_zero()) throw Error("square class of zero");
    if (backend == Backend::tower) return sign(x) == Sign::positive ? kClassOne : kClassMinusOne;
    return square_class(x.rational_value());
}

std::string class_to_string(const SquareClass& c) {
    if (c.is_one()) return "<1>";
    std::string s = "<";
    if (c.neg) s += "-1";
    for (const auto& p : c.primes) {
        if (s.size() > 1) s += ",";
        s += p.str();
    }
    return s + ">";
}

}  // namespace bloch
