#ifndef BLOCH_FIELD_HPP
#define BLOCH_FIELD_HPP

#include "bloch/numeric.hpp"

#include <memory>
#include <vector>

namespace bloch {

/// Which field the computation lives in. The tower backend is a window into
/// the constructible reals (every positive element gets a square root on
/// demand); the rational backend never leaves depth 0.
enum class Backend { rational, tower };

class TowerElement;
struct Tower;

/// Immutable quadratic-extension context: a chain of adjoined radicands.
/// nullptr is the base context (the rationals). Contexts are compared by
/// node identity; elements move between nested contexts by explicit
/// promotion.
using TowerContext = std::shared_ptr<const Tower>;

inline constexpr int kDefaultTowerDepthCap = 8;

struct Tower {
    TowerContext parent;
    // the adjoined radicand, expressed over `parent`; exactly positive and
    // not a square there (checked at adjunction time)
    std::shared_ptr<const TowerElement> radicand;
    int depth = 0;
};

int context_depth(const TowerContext& ctx);
bool is_ancestor(const TowerContext& anc, const TowerContext& desc);
/// Deeper of the two, requiring one to be an ancestor of the other.
TowerContext common_context(const TowerContext& a, const TowerContext& b);

/// Exact element of a quadratic tower: 2^depth rational coordinates on the
/// monomial basis of the adjoined square roots. Canonical: the element is
/// zero iff every coordinate is zero.
class TowerElement {
  public:
    TowerElement() : coeff_(1, Rat(0)) {}
    explicit TowerElement(Rat value, TowerContext ctx = nullptr);
    TowerElement(TowerContext ctx, std::vector<Rat> coeff);

    const TowerContext& context() const { return ctx_; }
    const std::vector<Rat>& coeff() const { return coeff_; }
    int depth() const { return context_depth(ctx_); }

    bool is_zero() const;
    bool is_rational() const;  // all non-constant coordinates vanish
    Rat rational_value() const;  // requires is_rational()

    TowerElement promote_to(const TowerContext& ctx) const;
    /// Drop trailing unused radicals (coordinates all zero in the upper half).
    TowerElement demote() const;

    friend TowerElement operator+(const TowerElement& a, const TowerElement& b);
    friend TowerElement operator-(const TowerElement& a, const TowerElement& b);
    friend TowerElement operator*(const TowerElement& a, const TowerElement& b);
    friend TowerElement operator/(const TowerElement& a, const TowerElement& b);
    TowerElement operator-() const;
    TowerElement inverse() const;

    friend bool operator==(const TowerElement& a, const TowerElement& b);
    friend bool operator!=(const TowerElement& a, const TowerElement& b) { return !(a == b); }

  private:
    TowerContext ctx_;
    std::vector<Rat> coeff_;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

Sign sign(const TowerElement& a);
bool is_positive(const TowerElement& a);

/// Exact rational enclosure of the element's real value, evaluated with
/// directed rounding at `precision_bits` fractional bits.
std::pair<Rat, Rat> interval_enclosure(const TowerElement& a, unsigned precision_bits);

/// Exact square root within the current tower, if one exists
/// (recursive-descent solve of (A + B*sqrt(r))^2 = x).
std::optional<TowerElement> sqrt_in_tower(const TowerElement& x);

struct SqrtResult {
    TowerElement root;    // positive, root^2 == input
    TowerContext context; // input context, possibly extended by one radicand
};

/// Square root of a positive element; extends the context when the element is
/// not already a square. Radicands are normalized (rational square content is
/// divided out before adjoining).
SqrtResult sqrt_positive(const TowerElement& x, int depth_cap = kDefaultTowerDepthCap);

/// Adjoin sqrt(radicand) to `parent`. Validates that the radicand is exactly
/// positive and not a square. Extensions are interned process-wide: the same
/// (parent, radicand) pair always yields the same context node, so
/// independently rebuilt chains unify.
TowerContext extend_context(const TowerContext& parent, const TowerElement& radicand,
                            int depth_cap = kDefaultTowerDepthCap);

/// Strict total order on elements of a common context (coordinate
/// lexicographic; not the field order).
bool lex_less(const TowerElement& a, const TowerElement& b);

}  // namespace bloch

#endif
