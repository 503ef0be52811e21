#ifndef BLOCH_MILNOR_HPP
#define BLOCH_MILNOR_HPP

#include "bloch/sym_wedge.hpp"

#include <json.hpp>
#include <map>

namespace bloch {

/// Symbol {a_1, ..., a_n}; degree 0 is the empty symbol (the unit).
struct MilnorSymbol {
    std::vector<TowerElement> entries;

    MilnorSymbol() = default;
    explicit MilnorSymbol(std::vector<TowerElement> es);
    size_t degree() const { return entries.size(); }
};

/// Homogeneous integer combination of symbols of one degree.
class KMElement {
  public:
    KMElement() = default;

    static KMElement term(const MilnorSymbol& s, Int n = Int(1));
    static KMElement unit() { return term(MilnorSymbol()); }

    void add(const MilnorSymbol& s, const Int& n);
    bool is_zero() const { return terms_.empty(); }
    std::optional<size_t> degree() const { return degree_; }
    std::vector<std::pair<MilnorSymbol, Int>> terms() const;

    KMElement& operator+=(const KMElement& o);
    KMElement scaled(const Int& n) const;
    friend bool operator==(const KMElement& a, const KMElement& b);

  private:
    using Key = std::vector<std::vector<Rat>>;
    void promote_ambient(const TowerContext& ctx);

    TowerContext ctx_;
    std::optional<size_t> degree_;
    std::map<Key, std::pair<MilnorSymbol, Int>> terms_;
};

/// Bilinear concatenation of symbols (the graded product).
KMElement product(const KMElement& s, const KMElement& t);

enum class Mod2NormalForm { ZERO, MINUS_ONES };

/// Mod-2 shadow over the tower backend: a symbol with any positive entry is
/// 2-divisible (the entry is a square); all-negative symbols extract to
/// {-1, ..., -1} via {-a, rest} = {-1, rest} + {a, rest}.
Mod2NormalForm mod2_reduce(const MilnorSymbol& s);

/// Explicit halving witness for an all-positive symbol: replace the first
/// entry by its square root (adjoined when necessary); 2 * result = s.
KMElement halve_positive_symbol(const MilnorSymbol& s);

/// Syntactic Steinberg detection: an entry equal to 1 or an adjacent pair
/// (a, 1-a).
bool steinberg_trivial(const MilnorSymbol& s);

/// Tensor-level expansion over a multiplicative basis: coefficients on basis
/// index words, coordinates touching a torsion index reduced mod 2. Oracle
/// for the halving identity.
std::map<std::vector<int>, Int> expand_tensor(const KMElement& e,
                                              const MultiplicativeBasis& basis);

nlohmann::json symbol_to_json(const MilnorSymbol& s);
MilnorSymbol symbol_from_json(const nlohmann::json& j);
nlohmann::json km_to_json(const KMElement& e);
KMElement km_from_json(const nlohmann::json& j);

}  // namespace bloch

#endif
