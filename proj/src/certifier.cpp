#include "bloch/certifier.hpp"

#include "bloch/json_io.hpp"
#include "bloch/zsolve.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace bloch {

using nlohmann::json;

Certificate& Certificate::operator+=(const Certificate& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

Certificate Certificate::scaled(const Int& n) const {
    Certificate out;
    if (n == 0) return out;
    for (const auto& t : terms) out.terms.push_back({t.coefficient.scaled(n), t.x, t.y});
    return out;
}

Certificate Certificate::translated(const SquareClass& c) const {
    Certificate out;
    for (const auto& t : terms) out.terms.push_back({t.coefficient.translated(c), t.x, t.y});
    return out;
}

RPElement certificate_expansion(const Certificate& cert, Backend backend) {
    RPElement sum;
    for (const auto& t : cert.terms) {
        require_relation_args(t.x, t.y);
        sum += s_relation(t.x, t.y, backend).times(t.coefficient);
    }
    return sum;
}

bool check_certificate(const IdentityClaim& claim, const Certificate& cert, Backend backend) {
    return certificate_expansion(cert, backend) == claim.target;
}

namespace {

TowerElement one_in(const TowerContext& ctx) { return TowerElement(Rat(1), ctx); }

bool is_excluded(const TowerElement& v) {
    return v.is_zero() || v == one_in(v.context());
}

// size measure steering the pool closure; small rationals are cheapest,
// every non-constant tower coordinate pays a surcharge
Int complexity(const TowerElement& v) {
    TowerElement d = v.demote();
    Int c = 0;
    int surcharge = 0;
    const auto& co = d.coeff();
    for (size_t i = 0; i < co.size(); ++i) {
        if (co[i] == 0) continue;
        c += abs(numerator(co[i])) + denominator(co[i]);
        if (i > 0) surcharge += 4;
    }
    return c + surcharge;
}

Int depth_cap_for(int level) { return Int(16 + 12 * (level - 1)); }

struct Flat {
    std::vector<Rat> gen;
    SquareClass cls;
    Int n;
};

std::vector<Flat> flatten(const RPElement& e, const TowerContext& ambient) {
    std::vector<Flat> out;
    for (const TowerElement& s : e.support()) {
        std::vector<Rat> key = s.promote_to(ambient).coeff();
        GroupRing coeff = e.coefficient(s);
        for (const auto& [c, n] : coeff.terms()) out.push_back({key, c, n});
    }
    return out;
}

}  // namespace

InstancePool build_pool(const IdentityClaim& claim, Backend backend, int depth,
                        const std::vector<TowerElement>& extra_seeds) {
    (void)backend;
    TowerContext ambient = claim.target.context();
    for (const auto& s : extra_seeds) ambient = common_context(ambient, s.context());

    std::map<std::vector<Rat>, TowerElement> values;
    auto admit = [&](const TowerElement& v, const Int& cap) {
        TowerElement p = v.promote_to(ambient);
        if (is_excluded(p)) return;
        if (cap >= 0 && complexity(p) > cap) return;
        values.emplace(p.coeff(), p);
    };
    admit(TowerElement(Rat(-1), ambient), Int(-1));
    for (const auto& s : claim.target.support()) admit(s, Int(-1));
    for (const auto& s : extra_seeds) admit(s, Int(-1));

    TowerElement one = one_in(ambient);
    for (int level = 1; level <= depth; ++level) {
        Int cap = depth_cap_for(level);
        std::vector<TowerElement> cur;
        cur.reserve(values.size());
        for (const auto& [k, v] : values) cur.push_back(v);
        for (const auto& u : cur) {
            admit(u.inverse(), cap);
            admit(one - u, cap);
        }
        for (const auto& a : cur)
            for (const auto& b : cur) {
                if (a == b) continue;
                admit(b / a, cap);
                admit((one - a.inverse()) / (one - b.inverse()), cap);
                admit((one - a) / (one - b), cap);
            }
    }

    InstancePool pool;
    pool.depth = depth;
    auto member = [&](const TowerElement& v) { return values.count(v.coeff()) != 0; };
    for (const auto& [ka, a] : values)
        for (const auto& [kb, b] : values) {
            if (a == b) continue;
            if (!member(b / a)) continue;
            if (!member((one - a.inverse()) / (one - b.inverse()))) continue;
            if (!member((one - a) / (one - b))) continue;
            pool.pairs.emplace_back(a, b);
        }
    return pool;
}

SearchResult search_certificate(const IdentityClaim& claim, const InstancePool& pool,
                                Backend backend) {
    if (claim.target.is_zero()) return {Certificate{}, "target is zero in the free module"};
    if (pool.pairs.empty()) return {std::nullopt, "empty instance pool"};

    TowerContext ambient = claim.target.context();
    for (const auto& [x, y] : pool.pairs) {
        ambient = common_context(ambient, x.context());
        ambient = common_context(ambient, y.context());
    }

    std::vector<std::vector<Flat>> rels;
    rels.reserve(pool.pairs.size());
    std::set<SquareClass> occurring;
    for (const auto& [x, y] : pool.pairs) {
        rels.push_back(flatten(s_relation(x, y, backend), ambient));
        for (const auto& f : rels.back()) occurring.insert(f.cls);
    }
    std::vector<Flat> tflat = flatten(claim.target, ambient);
    std::set<SquareClass> targets{kClassOne, kClassMinusOne};
    for (const auto& f : tflat) targets.insert(f.cls);

    // coefficient classes: everything occurring, the target's classes, and one
    // product round between the two
    std::set<SquareClass> cls = targets;
    cls.insert(occurring.begin(), occurring.end());
    for (const auto& b : occurring)
        for (const auto& t : targets) cls.insert(b * t);
    std::vector<SquareClass> classes(cls.begin(), cls.end());
    constexpr size_t kClassCap = 24;
    if (classes.size() > kClassCap) classes.resize(kClassCap);

    size_t ncols = pool.pairs.size() * classes.size();
    constexpr size_t kColumnCap = 30000;
    if (ncols > kColumnCap)
        throw Error("instance pool too large: " + std::to_string(ncols) +
                    " columns exceed the bound " + std::to_string(kColumnCap));

    std::map<std::pair<std::vector<Rat>, SquareClass>, int> rowix;
    auto row = [&](std::vector<Rat> gen, const SquareClass& c) {
        auto [it, added] = rowix.emplace(std::make_pair(std::move(gen), c), int(rowix.size()));
        return it->second;
    };

    SparseVec rhs;
    for (const auto& f : tflat) rhs[row(f.gen, f.cls)] += f.n;

    std::vector<SparseVec> cols;
    cols.reserve(ncols);
    for (const auto& rel : rels)
        for (const auto& c0 : classes) {
            SparseVec col;
            for (const auto& f : rel) col[row(f.gen, f.cls * c0)] += f.n;
            cols.push_back(std::move(col));
        }

    std::ostringstream diag;
    diag << pool.pairs.size() << " instances, " << classes.size() << " classes, "
         << rowix.size() << " rows at closure depth " << pool.depth;

    auto sol = solve_integer(cols, rhs, int(rowix.size()));
    if (!sol) return {std::nullopt, "no solution over " + diag.str()};

    Certificate cert;
    for (size_t pi = 0; pi < pool.pairs.size(); ++pi) {
        GroupRing coeff;
        for (size_t ci = 0; ci < classes.size(); ++ci)
            coeff += GroupRing(classes[ci], (*sol)[pi * classes.size() + ci]);
        if (!coeff.is_zero())
            cert.terms.push_back({coeff, pool.pairs[pi].first, pool.pairs[pi].second});
    }
    if (!check_certificate(claim, cert, backend))
        throw Error("internal error: solver returned an invalid certificate");
    return {std::move(cert), "found over " + diag.str()};
}

SearchResult prove(const IdentityClaim& claim, Backend backend, int max_depth,
                   const std::vector<TowerElement>& extra_seeds) {
    SearchResult last{std::nullopt, "not attempted"};
    for (int d = 1; d <= max_depth; ++d) {
        last = search_certificate(claim, build_pool(claim, backend, d, extra_seeds), backend);
        if (last.found()) return last;
    }
    return last;
}

Refutation refute_via_invariants(const IdentityClaim& claim, Backend backend) {
    if (!lambda1(claim.target, backend).is_zero()) return Refutation::REFUTED;
    PElement p = coinvariants(claim.target);
    if (p.is_zero()) return Refutation::UNKNOWN;
    // lambda2 needs a factorizable support; non-rational generators downgrade
    // the check to lambda1 only
    std::vector<Rat> vals;
    for (const auto& x : p.support()) {
        if (!x.is_rational()) return Refutation::UNKNOWN;
        Rat v = x.rational_value();
        vals.push_back(v);
        if (v != 1) vals.push_back(1 - v);
    }
    auto basis = MultiplicativeBasis::rational_for(vals);
    if (!lambda2(p, basis).is_zero()) return Refutation::REFUTED;
    return Refutation::UNKNOWN;
}

json certificate_to_json(const Certificate& cert, Backend backend) {
    json terms = json::array();
    for (const auto& t : cert.terms)
        terms.push_back(json{{"coeff", group_ring_to_json(t.coefficient)},
                             {"x", field_to_json(t.x)},
                             {"y", field_to_json(t.y)}});
    return json{{"backend", backend == Backend::rational ? "rational" : "tower"},
                {"terms", std::move(terms)}};
}

Certificate certificate_from_json(const json& j, Backend backend) {
    std::string want = backend == Backend::rational ? "rational" : "tower";
    if (j.at("backend").get<std::string>() != want)
        throw Error("certificate backend mismatch: expected " + want);
    Certificate cert;
    for (const auto& t : j.at("terms"))
        cert.terms.push_back({group_ring_from_json(t.at("coeff")), field_from_json(t.at("x")),
                              field_from_json(t.at("y"))});
    return cert;
}

FixtureStore& FixtureStore::shared() {
    static FixtureStore store = [] {
        if (const char* env = std::getenv("BLOCHWB_FIXTURE_DIR")) return FixtureStore(env);
#ifdef BLOCHWB_FIXTURE_DIR
        return FixtureStore(BLOCHWB_FIXTURE_DIR);
#else
        return FixtureStore("fixtures");
#endif
    }();
    return store;
}

std::optional<Certificate> FixtureStore::load(const std::string& key, Backend backend) const {
    std::ifstream in(dir_ + "/" + key + ".json");
    if (!in) return std::nullopt;
    try {
        return certificate_from_json(json::parse(in), backend);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void FixtureStore::save(const std::string& key, const Certificate& cert, Backend backend) const {
    std::filesystem::create_directories(dir_);
    std::ofstream out(dir_ + "/" + key + ".json");
    out << certificate_to_json(cert, backend).dump(2) << "\n";
}

namespace {

std::string hex_hash(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf, 12);
}

std::string fixture_key(const IdentityClaim& claim, Backend backend) {
    std::string slug;
    for (char c : claim.label) {
        if (std::isalnum((unsigned char)c))
            slug += char(std::tolower((unsigned char)c));
        else if (!slug.empty() && slug.back() != '-')
            slug += '-';
    }
    while (!slug.empty() && slug.back() == '-') slug.pop_back();
    if (slug.size() > 80) slug.resize(80);
    std::string payload = rp_to_json(claim.target).dump() +
                          (backend == Backend::rational ? "#q" : "#t");
    return slug + "-" + hex_hash(payload);
}

std::string elem_label(const TowerElement& x) {
    TowerElement d = x.demote();
    if (d.is_rational()) return rat_to_string(d.rational_value());
    return field_to_json(d).dump();
}

RPElement psi(int i, const TowerElement& x, Backend backend) {
    if (i != 1 && i != 2) throw Error("psi index must be 1 or 2");
    return i == 1 ? psi1(x) : psi2(x, backend);
}

// search with fixture caching; every certificate is kernel-checked before it
// is returned, whether cached or fresh
TacticResult proved_tactic(IdentityClaim claim, Backend backend,
                           const std::vector<TowerElement>& seeds = {}, int max_depth = 3) {
    if (claim.target.is_zero()) return {std::move(claim), Certificate{}};
    std::string key = fixture_key(claim, backend);
    FixtureStore& store = FixtureStore::shared();
    if (auto cached = store.load(key, backend)) {
        if (check_certificate(claim, *cached, backend)) return {std::move(claim), *cached};
    }
    SearchResult r = prove(claim, backend, max_depth, seeds);
    if (!r.found())
        throw Error("no certificate found for '" + claim.label + "': " + r.diagnostics);
    store.save(key, *r.certificate, backend);
    return {std::move(claim), *r.certificate};
}

TacticResult checked(IdentityClaim claim, Certificate cert, Backend backend) {
    if (!check_certificate(claim, cert, backend))
        throw Error("composed certificate failed the kernel check for '" + claim.label + "'");
    return {std::move(claim), std::move(cert)};
}

}  // namespace

TacticResult tactic_psi_additivity(int i, const TowerElement& x, const TowerElement& y,
                                   Backend backend) {
    TowerElement xy = x * y;
    IdentityClaim claim;
    claim.label = "psi" + std::to_string(i) + " additivity at (" + elem_label(x) + ", " +
                  elem_label(y) + ")";
    claim.target = psi(i, xy, backend) - psi(i, y, backend).translated(square_class(x, backend)) -
                   psi(i, x, backend);
    return proved_tactic(std::move(claim), backend, {x, y, xy});
}

TacticResult tactic_psi_swap(int i, const TowerElement& x, const TowerElement& y,
                             Backend backend) {
    IdentityClaim claim;
    claim.label = "psi" + std::to_string(i) + " symmetry at (" + elem_label(x) + ", " +
                  elem_label(y) + ")";
    SquareClass cx = square_class(x, backend), cy = square_class(y, backend);
    RPElement px = psi(i, x, backend), py = psi(i, y, backend);
    claim.target = py.translated(cx) - py - px.translated(cy) + px;
    if (claim.target.is_zero()) return {std::move(claim), Certificate{}};
    Certificate cert = tactic_psi_additivity(i, y, x, backend).certificate;
    cert += tactic_psi_additivity(i, x, y, backend).certificate.scaled(Int(-1));
    return checked(std::move(claim), std::move(cert), backend);
}

TacticResult tactic_psi_order2(int i, Backend backend) {
    TowerElement m1{Rat(-1)};
    IdentityClaim claim;
    claim.label = "psi" + std::to_string(i) + " doubled at -1";
    claim.target = psi(i, m1, backend).scaled(Int(2));
    return proved_tactic(std::move(claim), backend, {m1});
}

TacticResult tactic_psi_square(int i, const TowerElement& x, Backend backend) {
    TowerElement m1(Rat(-1), x.context());
    IdentityClaim claim;
    claim.label = "psi" + std::to_string(i) + " square at " + elem_label(x);
    claim.target =
        psi(i, x * x, backend) - psi(i, m1, backend).times(bracket(square_class(x, backend)));
    return proved_tactic(std::move(claim), backend, {x, -x, x * x, m1});
}

TacticResult tactic_psi_double_square(int i, const TowerElement& x, Backend backend) {
    IdentityClaim claim;
    claim.label = "psi" + std::to_string(i) + " doubled square at " + elem_label(x);
    claim.target = psi(i, x * x, backend).scaled(Int(2));
    if (claim.target.is_zero()) return {std::move(claim), Certificate{}};
    Certificate cert = tactic_psi_square(i, x, backend).certificate.scaled(Int(2));
    Certificate o2 = tactic_psi_order2(i, backend).certificate;
    SquareClass cx = square_class(x, backend);
    cert += o2.translated(cx);
    cert += o2.scaled(Int(-1));
    return checked(std::move(claim), std::move(cert), backend);
}

TacticResult tactic_psi_vanish_positive(int i, const TowerElement& x) {
    if (sign(x) != Sign::positive)
        throw Error("tactic_psi_vanish_positive requires a positive argument");
    IdentityClaim claim;
    claim.label = "psi" + std::to_string(i) + " vanishes at positive " + elem_label(x);
    claim.target = psi(i, x, Backend::tower);
    if (claim.target.is_zero()) return {std::move(claim), Certificate{}};
    // x = a^2 with a > 0, so <<a>> = 0 and the square identity collapses to
    // psi_i(x) = 0
    auto root = sqrt_positive(x);
    TowerElement a = root.root;
    TowerElement m1(Rat(-1), root.context);
    return proved_tactic(std::move(claim), Backend::tower, {a, -a, m1, x.promote_to(root.context)});
}

TacticResult tactic_trivial_action(const TowerElement& x) {
    if (is_excluded(x)) throw Error("tactic_trivial_action requires x outside {0, 1}");
    IdentityClaim claim;
    claim.label = "trivial minus-one action at " + elem_label(x);
    claim.target = RPElement::generator(x, GroupRing::of_class(kClassMinusOne)) -
                   RPElement::generator(x);
    if (sign(x) == Sign::positive) {
        Certificate cert =
            tactic_psi_vanish_positive(1, x).certificate.translated(kClassMinusOne);
        TowerElement omx = one_in(x.context()) - x;
        cert += tactic_psi_vanish_positive(2, x)
                    .certificate.translated(square_class(omx, Backend::tower))
                    .scaled(Int(-1));
        return checked(std::move(claim), std::move(cert), Backend::tower);
    }
    // negative x: 1-x > 0; combine the symmetry of the canonical element with
    // the positive case at 1-x
    TowerElement omx = one_in(x.context()) - x;
    Certificate cert = tactic_c_symmetric(x, Backend::tower).certificate;
    cert += tactic_trivial_action(omx).certificate;
    return checked(std::move(claim), std::move(cert), Backend::tower);
}

TacticResult tactic_c_constant(const TowerElement& x, const TowerElement& y, Backend backend) {
    if (is_excluded(x) || is_excluded(y))
        throw Error("tactic_c_constant requires arguments outside {0, 1}");
    IdentityClaim claim;
    claim.label = "canonical element constant at (" + elem_label(x) + ", " + elem_label(y) + ")";
    claim.target = c_element(x, backend) - c_element(y, backend);
    TowerElement one = one_in(x.context());
    return proved_tactic(std::move(claim), backend,
                         {x, y, one - x, one_in(y.context()) - y, TowerElement(Rat(-1))});
}

TacticResult tactic_c_symmetric(const TowerElement& x, Backend backend) {
    if (is_excluded(x)) throw Error("tactic_c_symmetric requires an argument outside {0, 1}");
    IdentityClaim claim;
    claim.label = "canonical element symmetric at " + elem_label(x);
    RPElement c = c_element(x, backend);
    claim.target = c.translated(kClassMinusOne) - c;
    TowerElement one = one_in(x.context());
    return proved_tactic(std::move(claim), backend,
                         {x, one - x, x.inverse(), TowerElement(Rat(-1), x.context())});
}

}  // namespace bloch
