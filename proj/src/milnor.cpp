#include "bloch/milnor.hpp"

#include "bloch/json_io.hpp"

namespace bloch {

using nlohmann::json;

MilnorSymbol::MilnorSymbol(std::vector<TowerElement> es) : entries(std::move(es)) {
    for (const auto& e : entries)
        if (e.is_zero()) throw Error("symbol entries must be nonzero");
}

KMElement KMElement::term(const MilnorSymbol& s, Int n) {
    KMElement e;
    e.add(s, n);
    if (!e.degree_) e.degree_ = s.degree();
    return e;
}

void KMElement::promote_ambient(const TowerContext& ctx) {
    if (ctx.get() == ctx_.get()) return;
    std::map<Key, std::pair<MilnorSymbol, Int>> moved;
    for (auto& [k, v] : terms_) {
        Key nk;
        for (const auto& e : v.first.entries) nk.push_back(e.promote_to(ctx).coeff());
        moved.emplace(std::move(nk), std::move(v));
    }
    terms_ = std::move(moved);
    ctx_ = ctx;
}

void KMElement::add(const MilnorSymbol& s, const Int& n) {
    if (degree_ && *degree_ != s.degree())
        throw Error("mixed symbol degrees in one element");
    degree_ = s.degree();
    if (n == 0) return;
    TowerContext ctx = ctx_;
    for (const auto& e : s.entries) ctx = common_context(ctx, e.context());
    promote_ambient(ctx);
    Key k;
    for (const auto& e : s.entries) k.push_back(e.promote_to(ctx_).coeff());
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), std::make_pair(s, n));
        return;
    }
    it->second.second += n;
    if (it->second.second == 0) terms_.erase(it);
}

std::vector<std::pair<MilnorSymbol, Int>> KMElement::terms() const {
    std::vector<std::pair<MilnorSymbol, Int>> out;
    out.reserve(terms_.size());
    for (const auto& [k, v] : terms_) out.push_back(v);
    return out;
}

KMElement& KMElement::operator+=(const KMElement& o) {
    for (const auto& [s, n] : o.terms()) add(s, n);
    return *this;
}

KMElement KMElement::scaled(const Int& n) const {
    KMElement out;
    out.degree_ = degree_;
    for (const auto& [s, m] : terms()) out.add(s, m * n);
    return out;
}

bool operator==(const KMElement& a, const KMElement& b) {
    KMElement d = a;
    for (const auto& [s, n] : b.terms()) d.add(s, -n);
    return d.is_zero();
}

KMElement product(const KMElement& s, const KMElement& t) {
    KMElement out;
    for (const auto& [a, n] : s.terms())
        for (const auto& [b, m] : t.terms()) {
            std::vector<TowerElement> es = a.entries;
            es.insert(es.end(), b.entries.begin(), b.entries.end());
            out.add(MilnorSymbol(std::move(es)), n * m);
        }
    return out;
}

Mod2NormalForm mod2_reduce(const MilnorSymbol& s) {
    for (const auto& e : s.entries)
        if (sign(e) == Sign::positive) return Mod2NormalForm::ZERO;
    // every entry is negative: repeated sign extraction leaves {-1, ..., -1}
    // plus symbols with a positive entry, which vanish mod 2
    return Mod2NormalForm::MINUS_ONES;
}

KMElement halve_positive_symbol(const MilnorSymbol& s) {
    if (s.degree() == 0) throw Error("cannot halve the degree-0 unit symbol");
    for (const auto& e : s.entries)
        if (sign(e) != Sign::positive) throw Error("halving requires all-positive entries");
    auto root = sqrt_positive(s.entries[0]);
    std::vector<TowerElement> es{root.root};
    for (size_t i = 1; i < s.entries.size(); ++i)
        es.push_back(s.entries[i].promote_to(root.context));
    return KMElement::term(MilnorSymbol(std::move(es)));
}

bool steinberg_trivial(const MilnorSymbol& s) {
    for (size_t i = 0; i < s.entries.size(); ++i) {
        TowerElement one(Rat(1), s.entries[i].context());
        if (s.entries[i] == one) return true;
        if (i + 1 < s.entries.size() && s.entries[i + 1] == one - s.entries[i]) return true;
    }
    return false;
}

std::map<std::vector<int>, Int> expand_tensor(const KMElement& e,
                                              const MultiplicativeBasis& basis) {
    std::map<std::vector<int>, Int> out;
    for (const auto& [s, n] : e.terms()) {
        std::vector<std::vector<Int>> exps;
        for (const auto& entry : s.entries) exps.push_back(basis.factor_or_throw(entry));
        // distribute the multilinear expansion over all index words
        std::vector<std::pair<std::vector<int>, Int>> words{{{}, n}};
        for (const auto& ex : exps) {
            std::vector<std::pair<std::vector<int>, Int>> next;
            for (const auto& [word, c] : words)
                for (size_t b = 0; b < ex.size(); ++b) {
                    if (ex[b] == 0) continue;
                    auto w = word;
                    w.push_back(int(b));
                    next.emplace_back(std::move(w), c * ex[b]);
                }
            words = std::move(next);
        }
        for (const auto& [word, c] : words) out[word] += c;
    }
    // reduce coordinates touching a torsion index mod 2
    for (auto it = out.begin(); it != out.end();) {
        for (int b : it->first)
            if (basis.is_torsion(b)) {
                it->second = ((it->second % 2) + 2) % 2;
                break;
            }
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

json symbol_to_json(const MilnorSymbol& s) {
    json out = json::array();
    for (const auto& e : s.entries) out.push_back(field_to_json(e));
    return out;
}

MilnorSymbol symbol_from_json(const json& j) {
    std::vector<TowerElement> es;
    for (const auto& e : j) es.push_back(field_from_json(e));
    return MilnorSymbol(std::move(es));
}

json km_to_json(const KMElement& e) {
    json out = json::array();
    for (const auto& [s, n] : e.terms())
        out.push_back(json{{"symbol", symbol_to_json(s)}, {"n", n.str()}});
    return out;
}

KMElement km_from_json(const json& j) {
    KMElement e;
    for (const auto& t : j)
        e.add(symbol_from_json(t.at("symbol")), Int(t.at("n").get<std::string>()));
    return e;
}

}  // namespace bloch
