#include "bloch/json_io.hpp"

namespace bloch {

using nlohmann::json;

json field_to_json(const TowerElement& x) {
    TowerElement d = x.demote();
    if (d.is_rational()) return rat_to_string(d.rational_value());
    json radicands = json::array();
    std::vector<const Tower*> chain;
    for (const Tower* t = d.context().get(); t; t = t->parent.get()) chain.push_back(t);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        json level = json::array();
        for (const auto& c : (*it)->radicand->coeff()) level.push_back(rat_to_string(c));
        radicands.push_back(std::move(level));
    }
    json coeff = json::array();
    for (const auto& c : d.coeff()) coeff.push_back(rat_to_string(c));
    return json{{"radicands", std::move(radicands)}, {"coeff", std::move(coeff)}};
}

namespace {

std::vector<Rat> rats_from_json(const json& j) {
    if (!j.is_array()) throw Error("expected an array of rational strings");
    std::vector<Rat> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(rat_from_string(e.get<std::string>()));
    return out;
}

TowerElement eval_json_expr(const json& j, TowerContext& ctx, int depth_cap) {
    if (j.is_string()) return TowerElement(rat_from_string(j.get<std::string>()), ctx);
    if (!j.is_object()) throw Error("malformed field expression");
    if (j.contains("radicands")) {
        TowerContext local;
        for (const auto& level : j.at("radicands"))
            local = extend_context(local, TowerElement(local, rats_from_json(level)), depth_cap);
        TowerElement v(local, rats_from_json(j.at("coeff")));
        // fold the rebuilt chain into the ambient one when compatible
        ctx = common_context(ctx, local);
        return v;
    }
    std::string op = j.at("op").get<std::string>();
    const json& args = j.at("args");
    auto arity = [&](size_t n) {
        if (args.size() != n) throw Error(op + " expects " + std::to_string(n) + " argument(s)");
    };
    if (op == "add" || op == "mul") {
        if (args.empty()) throw Error(op + " expects at least one argument");
        TowerElement v = eval_json_expr(args[0], ctx, depth_cap);
        for (size_t i = 1; i < args.size(); ++i) {
            TowerElement w = eval_json_expr(args[i], ctx, depth_cap);
            v = op == "add" ? v + w : v * w;
        }
        return v;
    }
    if (op == "neg") {
        arity(1);
        return -eval_json_expr(args[0], ctx, depth_cap);
    }
    if (op == "inv") {
        arity(1);
        return eval_json_expr(args[0], ctx, depth_cap).inverse();
    }
    if (op == "sqrt") {
        arity(1);
        TowerElement a = eval_json_expr(args[0], ctx, depth_cap);
        if (!is_positive(a.promote_to(ctx))) throw Error("sqrt requires a positive argument");
        auto r = sqrt_positive(a.promote_to(ctx), depth_cap);
        ctx = r.context;
        return r.root;
    }
    throw Error("unknown operation '" + op + "'");
}

}  // namespace

TowerElement field_from_json(const json& j, int tower_depth_cap) {
    TowerContext ctx;
    return eval_json_expr(j, ctx, tower_depth_cap).demote();
}

json class_to_json(const SquareClass& c) {
    json primes = json::array();
    for (const auto& p : c.primes) primes.push_back(p.str());
    return json{{"sign", c.neg ? -1 : 1}, {"primes", std::move(primes)}};
}

SquareClass class_from_json(const json& j) {
    SquareClass c;
    c.neg = j.at("sign").get<int>() < 0;
    for (const auto& p : j.at("primes")) c.primes.push_back(Int(p.get<std::string>()));
    for (size_t i = 1; i < c.primes.size(); ++i)
        if (!(c.primes[i - 1] < c.primes[i])) throw Error("class primes must be sorted and distinct");
    return c;
}

json group_ring_to_json(const GroupRing& r) {
    json out = json::array();
    for (const auto& [c, n] : r.terms()) {
        json t = class_to_json(c);
        t["n"] = n.str();
        out.push_back(std::move(t));
    }
    return out;
}

GroupRing group_ring_from_json(const json& j) {
    GroupRing r;
    for (const auto& t : j) r += GroupRing(class_from_json(t), Int(t.at("n").get<std::string>()));
    return r;
}

json rp_to_json(const RPElement& e) {
    json terms = json::array();
    for (const TowerElement& x : e.support())
        terms.push_back(json{{"gen", field_to_json(x)}, {"coeff", group_ring_to_json(e.coefficient(x))}});
    return json{{"terms", std::move(terms)}};
}

RPElement rp_from_json(const json& j, int tower_depth_cap) {
    RPElement e;
    for (const auto& t : j.at("terms"))
        e += RPElement::generator(field_from_json(t.at("gen"), tower_depth_cap),
                                  group_ring_from_json(t.at("coeff")));
    return e;
}

namespace {

json basis_to_json(const MultiplicativeBasis& basis) {
    json out = json::array();
    for (const auto& b : basis.entries()) out.push_back(field_to_json(b));
    return out;
}

json pairs_to_json(const std::set<std::pair<int, int>>& s) {
    json out = json::array();
    for (const auto& [i, j] : s) out.push_back(json::array({i, j}));
    return out;
}

}  // namespace

json sym_to_json(const SymSquareElement& s, const MultiplicativeBasis& basis) {
    json off = json::array();
    for (const auto& [ij, n] : s.off) off.push_back(json::array({ij.first, ij.second, n.str()}));
    json diag = json::array();
    for (int i : s.diag) diag.push_back(i);
    return json{{"basis", basis_to_json(basis)},
                {"off", std::move(off)},
                {"tor2", pairs_to_json(s.tor2)},
                {"diag", std::move(diag)}};
}

json wedge_to_json(const WedgeElement& w, const MultiplicativeBasis& basis) {
    json terms = json::array();
    for (const auto& [ij, n] : w.terms) terms.push_back(json::array({ij.first, ij.second, n.str()}));
    return json{{"basis", basis_to_json(basis)},
                {"terms", std::move(terms)},
                {"tor2", pairs_to_json(w.tor2)}};
}

}  // namespace bloch
