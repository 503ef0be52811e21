#ifndef BLOCH_CERTIFIER_HPP
#define BLOCH_CERTIFIER_HPP

#include "bloch/bloch.hpp"

#include <json.hpp>
#include <optional>
#include <string>

namespace bloch {

/// Assertion that `target` is 0 in RP(F) (not merely in the free module).
struct IdentityClaim {
    RPElement target;
    std::string label;
};

/// Explicit witness: target = sum coefficient_i * S_{x_i, y_i}. Checkable by
/// pure expansion; this is the entire trust base of the kernel.
struct CertificateTerm {
    GroupRing coefficient;
    TowerElement x, y;
};

struct Certificate {
    std::vector<CertificateTerm> terms;

    Certificate& operator+=(const Certificate& o);
    Certificate scaled(const Int& n) const;
    Certificate translated(const SquareClass& c) const;
};

/// Sum coefficient_i * S_{x_i, y_i} in the free module.
RPElement certificate_expansion(const Certificate& cert, Backend backend);

/// True iff the certificate expands exactly to claim.target. Throws on
/// malformed instances (x or y in {0,1}, x = y).
bool check_certificate(const IdentityClaim& claim, const Certificate& cert, Backend backend);

/// Finite set of candidate relation instances, closed (up to the given depth
/// and complexity budget) under the maps occurring in S_{x,y}.
struct InstancePool {
    std::vector<std::pair<TowerElement, TowerElement>> pairs;
    int depth = 3;
};

InstancePool build_pool(const IdentityClaim& claim, Backend backend, int depth,
                        const std::vector<TowerElement>& extra_seeds = {});

struct SearchResult {
    std::optional<Certificate> certificate;
    std::string diagnostics;  // pool/class sizes; reason when NOT_FOUND

    bool found() const { return certificate.has_value(); }
};

/// Exact span membership: flattens every instance over the occurring
/// (generator, square-class) coordinates and solves the integer linear system.
/// NOT_FOUND is inconclusive, never a refutation.
SearchResult search_certificate(const IdentityClaim& claim, const InstancePool& pool,
                                Backend backend);

/// Iterative-deepening driver: build_pool at depth 1..max_depth until found.
SearchResult prove(const IdentityClaim& claim, Backend backend, int max_depth = 3,
                   const std::vector<TowerElement>& extra_seeds = {});

enum class Refutation { REFUTED, UNKNOWN };

/// REFUTED iff Lambda(target) != 0; lambda2 is skipped (lambda1-only) when the
/// coinvariant support has no factorizable basis.
Refutation refute_via_invariants(const IdentityClaim& claim, Backend backend);

/// Append-only directory of frozen certificates, keyed by tactic and claim.
class FixtureStore {
  public:
    explicit FixtureStore(std::string dir) : dir_(std::move(dir)) {}

    /// BLOCHWB_FIXTURE_DIR env override, else the build-time default.
    static FixtureStore& shared();

    std::optional<Certificate> load(const std::string& key, Backend backend) const;
    void save(const std::string& key, const Certificate& cert, Backend backend) const;
    const std::string& dir() const { return dir_; }

  private:
    std::string dir_;
};

nlohmann::json certificate_to_json(const Certificate& cert, Backend backend);
Certificate certificate_from_json(const nlohmann::json& j, Backend backend);

struct TacticResult {
    IdentityClaim claim;
    Certificate certificate;
};

/// Additivity: psi_i(xy) - <x> psi_i(y) - psi_i(x) = 0.
TacticResult tactic_psi_additivity(int i, const TowerElement& x, const TowerElement& y,
                                   Backend backend);
/// Symmetry: <<x>> psi_i(y) - <<y>> psi_i(x) = 0 (difference of two additivity
/// certificates).
TacticResult tactic_psi_swap(int i, const TowerElement& x, const TowerElement& y,
                             Backend backend);
/// Torsion: 2 psi_i(-1) = 0.
TacticResult tactic_psi_order2(int i, Backend backend);
/// Square: psi_i(x^2) - <<x>> psi_i(-1) = 0.
TacticResult tactic_psi_square(int i, const TowerElement& x, Backend backend);
/// Double square: 2 psi_i(x^2) = 0 (square certificate doubled plus the
/// order-2 certificate translated by <<x>>).
TacticResult tactic_psi_double_square(int i, const TowerElement& x, Backend backend);
/// psi_i(x) = 0 for positive x over a quadratically closed tower: the square
/// certificate at a = sqrt(x), where <<a>> vanishes.
TacticResult tactic_psi_vanish_positive(int i, const TowerElement& x);
/// <-1>[x] - [x] = 0 over the tower; positive route via the psi certificates,
/// negative route via the C-element chain.
TacticResult tactic_trivial_action(const TowerElement& x);
/// c_element(x) - c_element(y) = 0.
TacticResult tactic_c_constant(const TowerElement& x, const TowerElement& y, Backend backend);
/// <-1> c_element(x) - c_element(x) = 0.
TacticResult tactic_c_symmetric(const TowerElement& x, Backend backend);

}  // namespace bloch

#endif
