#ifndef BLOCH_SYM_WEDGE_HPP
#define BLOCH_SYM_WEDGE_HPP

#include "bloch/field.hpp"

#include <map>
#include <set>

namespace bloch {

/// Finite window into F^x: an ordered list of elements declared
/// multiplicatively independent. Expansion of a field element into bounded
/// integer exponents over the window either succeeds exactly or fails loudly.
class MultiplicativeBasis {
  public:
    MultiplicativeBasis(Backend backend, std::vector<TowerElement> entries);

    /// Rational backend: -1 followed by the primes needed to factor the given
    /// values (sorted ascending).
    static MultiplicativeBasis rational_for(const std::vector<Rat>& values);

    Backend backend() const { return backend_; }
    const std::vector<TowerElement>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

    /// -1 generates the 2-torsion of F^x; tensor coordinates along a torsion
    /// index live in Z/2, not Z.
    bool is_torsion(int i) const { return torsion_[size_t(i)]; }

    /// Exponent vector e with prod entries[i]^e[i] = x, |e[i]| <= 64.
    std::optional<std::vector<Int>> factor(const TowerElement& x) const;
    /// Same, but throws naming the element on failure.
    std::vector<Int> factor_or_throw(const TowerElement& x) const;

  private:
    Backend backend_;
    std::vector<TowerElement> entries_;
    std::vector<bool> torsion_;
    // rational fast path: per-entry prime exponent vectors
    bool all_rational_ = true;
    std::vector<Int> prime_rows_;                  // sorted primes occurring in entries
    std::vector<std::map<int, Int>> entry_cols_;  // prime-row -> exponent, per entry
    std::vector<bool> entry_neg_;
};

/// Element of S^2_Z(A) for A = mu_2 + free on the non-torsion basis entries:
/// integer coefficients on ordered pairs i < j of free indices, Z/2
/// coefficients on pairs touching a torsion index, and Z/2 coefficients on
/// the diagonal (2(x o x) = 0).
struct SymSquareElement {
    std::map<std::pair<int, int>, Int> off;  // i < j, both free
    std::set<std::pair<int, int>> tor2;      // i < j, at least one torsion index
    std::set<int> diag;                      // mod-2 support

    bool is_zero() const { return off.empty() && tor2.empty() && diag.empty(); }
    friend bool operator==(const SymSquareElement&, const SymSquareElement&) = default;
    SymSquareElement& operator+=(const SymSquareElement& o);
    friend SymSquareElement operator+(SymSquareElement a, const SymSquareElement& b) { return a += b; }
    SymSquareElement scaled(const Int& n) const;
};

struct WedgeElement {
    std::map<std::pair<int, int>, Int> terms;  // i < j, both free
    std::set<std::pair<int, int>> tor2;        // i < j, at least one torsion index

    bool is_zero() const { return terms.empty() && tor2.empty(); }
    friend bool operator==(const WedgeElement&, const WedgeElement&) = default;
    WedgeElement& operator+=(const WedgeElement& o);
    friend WedgeElement operator+(WedgeElement a, const WedgeElement& b) { return a += b; }
    WedgeElement scaled(const Int& n) const;
};

/// x ∘ y expanded over the basis.
SymSquareElement expand_sym(const TowerElement& x, const TowerElement& y,
                            const MultiplicativeBasis& basis);

/// x ∧ y expanded over the basis.
WedgeElement expand_wedge(const TowerElement& x, const TowerElement& y,
                          const MultiplicativeBasis& basis);

/// The identity 2 * half = whole is stated in the wedge square of the FREE
/// abelian group on the basis entries (with -1 as torsion); x_exponents and
/// y_exponents are the shipped factorizations of x and y, so the identity
/// pushes forward to wedge^2(F^x) along entries^e -> field even when the
/// entries happen to be multiplicatively dependent.
struct HalveWedgeResult {
    WedgeElement half;                      // 2 * half = whole
    WedgeElement whole;                     // x wedge y via the shipped exponents
    std::vector<Int> x_exponents;           // prod entries[i]^x_exponents[i] = x
    std::vector<Int> y_exponents;
    MultiplicativeBasis basis;              // {-1, sqrt|x|, sqrt|y|} (deduplicated)
    TowerContext context;                   // possibly extended by the adjoined roots
};

/// Constructive 2-divisibility of the wedge over a tower: writes x = sgn * s^2,
/// y = sgn * t^2 and returns w with 2w = x ∧ y.
HalveWedgeResult halve_wedge(const TowerElement& x, const TowerElement& y);

/// Re-derives the halving identity from scratch: the shipped exponents
/// multiply out to x and y exactly, and 2 * half = whole coordinate-wise.
bool verify_halving(const HalveWedgeResult& hw, const TowerElement& x, const TowerElement& y);

}  // namespace bloch

#endif
