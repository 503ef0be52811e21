#ifndef BLOCH_GROUP_RING_HPP
#define BLOCH_GROUP_RING_HPP

#include "bloch/square_class.hpp"

#include <map>

namespace bloch {

/// Element of the integral group ring Z[F^x/(F^x)^2]: finite formal sum of
/// square classes with integer coefficients. Zero coefficients are never
/// stored.
class GroupRing {
  public:
    GroupRing() = default;
    explicit GroupRing(Int n) {
        if (n != 0) terms_[kClassOne] = std::move(n);
    }
    GroupRing(const SquareClass& c, Int n) {
        if (n != 0) terms_[c] = std::move(n);
    }

    static GroupRing one() { return GroupRing(Int(1)); }
    static GroupRing of_class(const SquareClass& c) { return GroupRing(c, 1); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<SquareClass, Int>& terms() const { return terms_; }
    Int coefficient(const SquareClass& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? Int(0) : it->second;
    }

    GroupRing& operator+=(const GroupRing& o);
    GroupRing& operator-=(const GroupRing& o);
    friend GroupRing operator+(GroupRing a, const GroupRing& b) { return a += b; }
    friend GroupRing operator-(GroupRing a, const GroupRing& b) { return a -= b; }
    GroupRing operator-() const;
    GroupRing scaled(const Int& n) const;
    /// Translate by a class: c * (sum n_i <c_i>) = sum n_i <c c_i>.
    GroupRing translated(const SquareClass& c) const;
    friend GroupRing operator*(const GroupRing& a, const GroupRing& b);

    friend bool operator==(const GroupRing& a, const GroupRing& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const GroupRing& a, const GroupRing& b) { return !(a == b); }

  private:
    std::map<SquareClass, Int> terms_;
};

/// Augmentation: sum of coefficients.
Int epsilon(const GroupRing& r);

/// <<x>> = <x> - 1, the augmentation-ideal basis element attached to x.
GroupRing bracket(const SquareClass& c);
GroupRing bracket(const TowerElement& x, Backend backend);

std::string group_ring_to_string(const GroupRing& r);

}  // namespace bloch

#endif
