#include "bloch/group_ring.hpp"

namespace bloch {

GroupRing& GroupRing::operator+=(const GroupRing& o) {
    for (const auto& [c, n] : o.terms_) {
        Int& v = terms_[c];
        v += n;
        if (v == 0) terms_.erase(c);
    }
    return *this;
}

GroupRing& GroupRing::operator-=(const GroupRing& o) {
    for (const auto& [c, n] : o.terms_) {
        Int& v = terms_[c];
        v -= n;
        if (v == 0) terms_.erase(c);
    }
    return *this;
}

GroupRing GroupRing::operator-() const { return scaled(Int(-1)); }

GroupRing GroupRing::scaled(const Int& n) const {
    GroupRing r;
    if (n == 0) return r;
    for (const auto& [c, v] : terms_) r.terms_[c] = v * n;
    return r;
}

GroupRing GroupRing::translated(const SquareClass& c) const {
    GroupRing r;
    for (const auto& [k, v] : terms_) r.terms_[c * k] = v;
    return r;
}

GroupRing operator*(const GroupRing& a, const GroupRing& b) {
    GroupRing r;
    for (const auto& [c, n] : a.terms_) r += b.translated(c).scaled(n);
    return r;
}

Int epsilon(const GroupRing& r) {
    Int s = 0;
    for (const auto& [c, n] : r.terms()) s += n;
    return s;
}

GroupRing bracket(const SquareClass& c) {
    GroupRing r = GroupRing::of_class(c);
    r -= GroupRing::one();
    return r;
}

GroupRing bracket(const TowerElement& x, Backend backend) { return bracket(square_class(x, backend)); }

std::string group_ring_to_string(const GroupRing& r) {
    if (r.is_zero()) return "0";
    std::string s;
    for (const auto& [c, n] : r.terms()) {
        if (!s.empty()) s += " + ";
        s += n.str() + "*" + class_to_string(c);
    }
    return s;
}

}  // namespace bloch
