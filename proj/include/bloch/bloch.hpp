#ifndef BLOCH_BLOCH_HPP
#define BLOCH_BLOCH_HPP

#include "bloch/group_ring.hpp"
#include "bloch/sym_wedge.hpp"

#include <map>

namespace bloch {

/// Free R_F-module precursor of the refined pre-Bloch group: finite formal
/// sum of generators [x] (x in F^x, [1] = 0) with group-ring coefficients.
/// Generators are keyed by their canonical (demoted) coefficient vector,
/// promoted to a shared ambient context. Equality is equality in the FREE
/// module; equality in RP(F) itself is the certifier's job.
class RPElement {
  public:
    RPElement() = default;

    static RPElement generator(const TowerElement& x, GroupRing coeff = GroupRing::one());

    bool is_zero() const { return terms_.empty(); }
    const TowerContext& context() const { return ctx_; }
    const std::map<std::vector<Rat>, GroupRing>& terms() const { return terms_; }
    std::vector<TowerElement> support() const;
    GroupRing coefficient(const TowerElement& x) const;

    RPElement& operator+=(const RPElement& o);
    RPElement& operator-=(const RPElement& o);
    friend RPElement operator+(RPElement a, const RPElement& b) { return a += b; }
    friend RPElement operator-(RPElement a, const RPElement& b) { return a -= b; }
    RPElement operator-() const;
    RPElement scaled(const Int& n) const;
    RPElement translated(const SquareClass& c) const;  // act by the class <c>
    RPElement times(const GroupRing& r) const;

    friend bool operator==(const RPElement& a, const RPElement& b) { return (RPElement(a) -= b).is_zero(); }
    friend bool operator!=(const RPElement& a, const RPElement& b) { return !(a == b); }

  private:
    void promote_ambient(const TowerContext& ctx);

    TowerContext ctx_;
    std::map<std::vector<Rat>, GroupRing> terms_;
};

/// Free precursor of the classical pre-Bloch group: integer combinations of
/// generators [x]; the coinvariants image of RPElement.
class PElement {
  public:
    PElement() = default;

    static PElement generator(const TowerElement& x, Int coeff = Int(1));

    bool is_zero() const { return terms_.empty(); }
    const TowerContext& context() const { return ctx_; }
    const std::map<std::vector<Rat>, Int>& terms() const { return terms_; }
    std::vector<TowerElement> support() const;

    PElement& operator+=(const PElement& o);
    PElement& operator-=(const PElement& o);
    friend PElement operator+(PElement a, const PElement& b) { return a += b; }
    friend PElement operator-(PElement a, const PElement& b) { return a -= b; }
    PElement operator-() const;
    PElement scaled(const Int& n) const;

    friend bool operator==(const PElement& a, const PElement& b) { return (PElement(a) -= b).is_zero(); }
    friend bool operator!=(const PElement& a, const PElement& b) { return !(a == b); }

  private:
    void promote_ambient(const TowerContext& ctx);

    TowerContext ctx_;
    std::map<std::vector<Rat>, Int> terms_;
};

void require_relation_args(const TowerElement& x, const TowerElement& y);

/// Refined five-term relation
/// S_{x,y}: [x] - [y] + <x>[y/x] - <1/x - 1>[(1-1/x)/(1-1/y)] + <1-x>[(1-x)/(1-y)].
RPElement s_relation(const TowerElement& x, const TowerElement& y, Backend backend);

/// Classical five-term relation R_{x,y} (the coinvariants of S_{x,y}).
PElement r_relation(const TowerElement& x, const TowerElement& y);

/// psi1(x) = [x] + <-1>[1/x]
RPElement psi1(const TowerElement& x);
/// psi2(x) = <1/x - 1>[x] + <1-x>[1/x], psi2(1) = 0
RPElement psi2(const TowerElement& x, Backend backend);
/// C(x) = [x] + <-1>[1-x] + <<1-x>> psi1(x)
RPElement c_element(const TowerElement& x, Backend backend);

PElement coinvariants(const RPElement& e);

/// lambda1([x]) = <<1-x>><<x>>, extended R_F-linearly; lands in I_F^2.
GroupRing lambda1(const RPElement& e, Backend backend);

/// lambda([x]) = (1-x) o x into S^2_Z(F^x), extended linearly.
SymSquareElement lambda2(const PElement& e, const MultiplicativeBasis& basis);

struct LambdaTarget {
    GroupRing first;           // in I_F^2
    SymSquareElement second;

    bool is_zero() const { return first.is_zero() && second.is_zero(); }
};

/// Lambda = (lambda1, lambda2 after coinvariants); kernel = refined Bloch candidates.
LambdaTarget big_lambda(const RPElement& e, const MultiplicativeBasis& basis, Backend backend);

/// Exact membership test for I_F^2 within the span of products
/// <<a>><<b>> over the classes occurring in r (plus <-1>).
bool in_aug_ideal_squared(const GroupRing& r);

std::string rp_to_string(const RPElement& e);

}  // namespace bloch

#endif
