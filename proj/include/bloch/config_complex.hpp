#ifndef BLOCH_CONFIG_COMPLEX_HPP
#define BLOCH_CONFIG_COMPLEX_HPP

#include "bloch/group_ring.hpp"

#include <json.hpp>
#include <map>
#include <optional>

namespace bloch {

/// Point of P^1(F), normalized to (x : 1) or (1 : 0) = infinity.
struct ProjPoint {
    bool inf = false;
    TowerElement value;  // meaningful iff !inf

    static ProjPoint infinity() { return {true, TowerElement()}; }
    static ProjPoint finite(TowerElement x) { return {false, std::move(x)}; }
    /// Homogeneous (a : b), not both zero.
    static ProjPoint homogeneous(const TowerElement& a, const TowerElement& b);

    friend bool operator==(const ProjPoint& p, const ProjPoint& q);
    friend bool operator!=(const ProjPoint& p, const ProjPoint& q) { return !(p == q); }
};

/// Exact SL2: ad - bc = 1 is checked at construction.
struct SL2Matrix {
    TowerElement a, b, c, d;

    SL2Matrix(TowerElement a, TowerElement b, TowerElement c, TowerElement d);
    static SL2Matrix identity();
    friend SL2Matrix operator*(const SL2Matrix& g, const SL2Matrix& h);
};

/// Diagonal subgroup (stabilizer of the pair (infinity, 0)).
bool in_T(const SL2Matrix& g);
/// Upper triangular subgroup (stabilizer of infinity).
bool in_B(const SL2Matrix& g);

/// Fractional linear action on P^1.
ProjPoint moebius_apply(const SL2Matrix& g, const ProjPoint& p);

/// Ordered tuple of pairwise-distinct points; the degree-n part of the
/// configuration complex is spanned by tuples of length n+1.
struct ConfigTuple {
    std::vector<ProjPoint> points;

    explicit ConfigTuple(std::vector<ProjPoint> pts);
    size_t size() const { return points.size(); }
};

ConfigTuple apply(const SL2Matrix& g, const ConfigTuple& t);

/// Integer chain of equal-length tuples.
class TupleChain {
  public:
    TupleChain() = default;

    void add(const ConfigTuple& t, const Int& n);
    bool is_zero() const { return terms_.empty(); }
    std::vector<std::pair<ConfigTuple, Int>> terms() const;

  private:
    // key: per point, the infinity flag and ambient coordinates
    using Key = std::vector<std::pair<bool, std::vector<Rat>>>;
    void promote_ambient(const TowerContext& ctx);

    TowerContext ctx_;
    std::map<Key, std::pair<ConfigTuple, Int>> terms_;
};

/// Alternating sum of face deletions; tuples of length 2 map to point
/// differences, length below 2 to zero.
TupleChain boundary(const ConfigTuple& t);
TupleChain boundary(const TupleChain& c);

/// Ordered tuple of distinct field elements outside {0, 1}; [z_1, ..., z_n]
/// indexes the canonical form of an (n+2)-point configuration.
struct ZTuple {
    std::vector<TowerElement> entries;

    ZTuple() = default;
    explicit ZTuple(std::vector<TowerElement> es);
    size_t size() const { return entries.size(); }
};

/// Cross-ratio-like invariant with the three infinity branches.
TowerElement phi(const ProjPoint& x, const ProjPoint& y, const ProjPoint& z);

/// Witness g with g(p0) = infinity, g(p1) = 0.
SL2Matrix pair_witness(const ProjPoint& p0, const ProjPoint& p1);

/// Witness g with g(p0, p1, p2) = (0, infinity, 1) when the required scaling
/// is a square (always in PGL2, not always in SL2); nullopt = NO_SL2_WITNESS.
std::optional<SL2Matrix> triple_witness(const ProjPoint& p0, const ProjPoint& p1,
                                        const ProjPoint& p2, Backend backend);

struct CanonicalForm {
    SquareClass cls;
    ZTuple tuple;
};

/// (x_0,...,x_n) -> <phi(x_0,x_1,x_2)> [ratios of phi(x_0,x_1,x_j)]; an
/// SL2-invariant of the tuple. Requires length >= 3.
CanonicalForm canonicalize(const ConfigTuple& t, Backend backend);

/// Canonical representative (0, infinity, 1, z_1, ..., z_n) of a ZTuple.
ConfigTuple canonical_tuple(const ZTuple& z);

/// Formal sum over ZTuples with group-ring coefficients.
class RFModuleElement {
  public:
    RFModuleElement() = default;

    static RFModuleElement term(const ZTuple& z, GroupRing coeff = GroupRing::one());

    void add(const ZTuple& z, const GroupRing& coeff);
    bool is_zero() const { return terms_.empty(); }
    std::vector<std::pair<ZTuple, GroupRing>> terms() const;
    /// Coefficient of the empty tuple (the R_F piece).
    GroupRing scalar() const;

    RFModuleElement& operator+=(const RFModuleElement& o);
    friend bool operator==(const RFModuleElement& a, const RFModuleElement& b);

  private:
    using Key = std::vector<std::vector<Rat>>;
    void promote_ambient(const TowerContext& ctx);

    TowerContext ctx_;
    std::map<Key, std::pair<ZTuple, GroupRing>> terms_;
};

/// The differential induced on canonical forms: lift, take the boundary,
/// re-canonicalize every face. Defined for tuples with >= 1 entry.
RFModuleElement induced_d1(const RFModuleElement& e, Backend backend);

/// induced_d1([z]) = kInducedD1Sign * lambda1([z]) generator-wise.
inline constexpr int kInducedD1Sign = -1;

nlohmann::json point_to_json(const ProjPoint& p);
ProjPoint point_from_json(const nlohmann::json& j);
nlohmann::json tuple_to_json(const ConfigTuple& t);
ConfigTuple tuple_from_json(const nlohmann::json& j);
nlohmann::json chain_to_json(const TupleChain& c);
nlohmann::json rf_module_to_json(const RFModuleElement& e);
RFModuleElement rf_module_from_json(const nlohmann::json& j);

}  // namespace bloch

#endif
