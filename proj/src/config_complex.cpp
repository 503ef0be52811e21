#include "bloch/config_complex.hpp"

#include "bloch/json_io.hpp"

namespace bloch {

using nlohmann::json;

namespace {

TowerElement one_in(const TowerContext& ctx) { return TowerElement(Rat(1), ctx); }

bool is_zero_or_one(const TowerElement& v) { return v.is_zero() || v == one_in(v.context()); }

TowerContext fold_ctx(TowerContext ctx, const TowerElement& v) {
    return common_context(std::move(ctx), v.context());
}

}  // namespace

ProjPoint ProjPoint::homogeneous(const TowerElement& a, const TowerElement& b) {
    if (b.is_zero()) {
        if (a.is_zero()) throw Error("projective point needs a nonzero coordinate");
        return infinity();
    }
    return finite(a / b);
}

bool operator==(const ProjPoint& p, const ProjPoint& q) {
    if (p.inf != q.inf) return false;
    return p.inf || p.value == q.value;
}

SL2Matrix::SL2Matrix(TowerElement a_, TowerElement b_, TowerElement c_, TowerElement d_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    TowerContext ctx = fold_ctx(fold_ctx(fold_ctx(a.context(), b), c), d);
    if (a * d - b * c != one_in(ctx)) throw Error("matrix determinant is not 1");
}

SL2Matrix SL2Matrix::identity() {
    return SL2Matrix(one_in(nullptr), TowerElement(), TowerElement(), one_in(nullptr));
}

SL2Matrix operator*(const SL2Matrix& g, const SL2Matrix& h) {
    return SL2Matrix(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c,
                     g.c * h.b + g.d * h.d);
}

bool in_T(const SL2Matrix& g) { return g.b.is_zero() && g.c.is_zero(); }

bool in_B(const SL2Matrix& g) { return g.c.is_zero(); }

ProjPoint moebius_apply(const SL2Matrix& g, const ProjPoint& p) {
    if (p.inf) return ProjPoint::homogeneous(g.a, g.c);
    return ProjPoint::homogeneous(g.a * p.value + g.b, g.c * p.value + g.d);
}

ConfigTuple::ConfigTuple(std::vector<ProjPoint> pts) : points(std::move(pts)) {
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw Error("configuration points must be distinct");
}

ConfigTuple apply(const SL2Matrix& g, const ConfigTuple& t) {
    std::vector<ProjPoint> out;
    out.reserve(t.points.size());
    for (const auto& p : t.points) out.push_back(moebius_apply(g, p));
    return ConfigTuple(std::move(out));
}

void TupleChain::promote_ambient(const TowerContext& ctx) {
    if (ctx.get() == ctx_.get()) return;
    std::map<Key, std::pair<ConfigTuple, Int>> moved;
    for (auto& [k, v] : terms_) {
        Key nk;
        for (const auto& p : v.first.points)
            nk.emplace_back(p.inf, p.inf ? std::vector<Rat>{}
                                         : p.value.promote_to(ctx).coeff());
        moved.emplace(std::move(nk), std::move(v));
    }
    terms_ = std::move(moved);
    ctx_ = ctx;
}

void TupleChain::add(const ConfigTuple& t, const Int& n) {
    if (n == 0) return;
    TowerContext ctx = ctx_;
    for (const auto& p : t.points)
        if (!p.inf) ctx = fold_ctx(ctx, p.value);
    promote_ambient(ctx);
    Key k;
    for (const auto& p : t.points)
        k.emplace_back(p.inf,
                       p.inf ? std::vector<Rat>{} : p.value.promote_to(ctx_).coeff());
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), std::make_pair(t, n));
        return;
    }
    it->second.second += n;
    if (it->second.second == 0) terms_.erase(it);
}

std::vector<std::pair<ConfigTuple, Int>> TupleChain::terms() const {
    std::vector<std::pair<ConfigTuple, Int>> out;
    out.reserve(terms_.size());
    for (const auto& [k, v] : terms_) out.push_back(v);
    return out;
}

TupleChain boundary(const ConfigTuple& t) {
    TupleChain out;
    if (t.size() < 2) return out;
    for (size_t i = 0; i < t.size(); ++i) {
        std::vector<ProjPoint> face;
        for (size_t j = 0; j < t.size(); ++j)
            if (j != i) face.push_back(t.points[j]);
        out.add(ConfigTuple(std::move(face)), (i % 2 == 0) ? Int(1) : Int(-1));
    }
    return out;
}

TupleChain boundary(const TupleChain& c) {
    TupleChain out;
    for (const auto& [t, n] : c.terms())
        for (const auto& [f, m] : boundary(t).terms()) out.add(f, n * m);
    return out;
}

ZTuple::ZTuple(std::vector<TowerElement> es) : entries(std::move(es)) {
    for (size_t i = 0; i < entries.size(); ++i) {
        if (is_zero_or_one(entries[i])) throw Error("tuple entries must avoid {0, 1}");
        for (size_t j = i + 1; j < entries.size(); ++j)
            if (entries[i] == entries[j]) throw Error("tuple entries must be distinct");
    }
}

TowerElement phi(const ProjPoint& x, const ProjPoint& y, const ProjPoint& z) {
    if (x == y || y == z || x == z) throw Error("phi requires pairwise distinct points");
    if (x.inf) return (y.value - z.value).inverse();
    if (y.inf) return z.value - x.value;
    if (z.inf) return x.value - y.value;
    return (z.value - x.value) * (x.value - y.value) / (z.value - y.value);
}

SL2Matrix pair_witness(const ProjPoint& p0, const ProjPoint& p1) {
    if (p0 == p1) throw Error("pair witness requires distinct points");
    // columns of M are homogeneous coordinates of p0 and p1; a row-rescaled
    // inverse of M has determinant 1 and sends (p0, p1) to (infinity, 0)
    TowerContext ctx;
    if (!p0.inf) ctx = fold_ctx(ctx, p0.value);
    if (!p1.inf) ctx = fold_ctx(ctx, p1.value);
    TowerElement one = one_in(ctx), zero = TowerElement(Rat(0), ctx);
    TowerElement a0 = p0.inf ? one : p0.value.promote_to(ctx), b0 = p0.inf ? zero : one;
    TowerElement a1 = p1.inf ? one : p1.value.promote_to(ctx), b1 = p1.inf ? zero : one;
    TowerElement det = a0 * b1 - a1 * b0;
    return SL2Matrix(b1 / det, -(a1 / det), -b0, a0);
}

std::optional<SL2Matrix> triple_witness(const ProjPoint& p0, const ProjPoint& p1,
                                        const ProjPoint& p2, Backend backend) {
    SL2Matrix g = pair_witness(p1, p0);  // p1 -> infinity, p0 -> 0
    ProjPoint w = moebius_apply(g, p2);
    // rescale by diag(t, 1/t) with t^2 w = 1; needs 1/w to be a square
    TowerElement winv = w.value.inverse();
    std::optional<TowerElement> t;
    if (backend == Backend::tower) {
        if (is_positive(winv)) t = sqrt_positive(winv).root;
    } else {
        t = sqrt_in_tower(winv);
    }
    if (!t) return std::nullopt;
    TowerContext ctx = t->context();
    TowerElement zero = TowerElement(Rat(0), ctx);
    return SL2Matrix(*t, zero, zero, t->inverse()) * g;
}

CanonicalForm canonicalize(const ConfigTuple& t, Backend backend) {
    if (t.size() < 3) throw Error("canonicalize requires at least 3 points");
    TowerElement base = phi(t.points[0], t.points[1], t.points[2]);
    std::vector<TowerElement> entries;
    for (size_t j = 3; j < t.size(); ++j)
        entries.push_back(phi(t.points[0], t.points[1], t.points[j]) / base);
    return {square_class(base, backend), ZTuple(std::move(entries))};
}

ConfigTuple canonical_tuple(const ZTuple& z) {
    TowerContext ctx;
    for (const auto& e : z.entries) ctx = fold_ctx(ctx, e);
    std::vector<ProjPoint> pts{ProjPoint::finite(TowerElement(Rat(0), ctx)),
                               ProjPoint::infinity(),
                               ProjPoint::finite(one_in(ctx))};
    for (const auto& e : z.entries) pts.push_back(ProjPoint::finite(e.promote_to(ctx)));
    return ConfigTuple(std::move(pts));
}

RFModuleElement RFModuleElement::term(const ZTuple& z, GroupRing coeff) {
    RFModuleElement e;
    e.add(z, coeff);
    return e;
}

void RFModuleElement::promote_ambient(const TowerContext& ctx) {
    if (ctx.get() == ctx_.get()) return;
    std::map<Key, std::pair<ZTuple, GroupRing>> moved;
    for (auto& [k, v] : terms_) {
        Key nk;
        for (const auto& e : v.first.entries) nk.push_back(e.promote_to(ctx).coeff());
        moved.emplace(std::move(nk), std::move(v));
    }
    terms_ = std::move(moved);
    ctx_ = ctx;
}

void RFModuleElement::add(const ZTuple& z, const GroupRing& coeff) {
    if (coeff.is_zero()) return;
    TowerContext ctx = ctx_;
    for (const auto& e : z.entries) ctx = fold_ctx(ctx, e);
    promote_ambient(ctx);
    Key k;
    for (const auto& e : z.entries) k.push_back(e.promote_to(ctx_).coeff());
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(std::move(k), std::make_pair(z, coeff));
        return;
    }
    it->second.second += coeff;
    if (it->second.second.is_zero()) terms_.erase(it);
}

std::vector<std::pair<ZTuple, GroupRing>> RFModuleElement::terms() const {
    std::vector<std::pair<ZTuple, GroupRing>> out;
    out.reserve(terms_.size());
    for (const auto& [k, v] : terms_) out.push_back(v);
    return out;
}

GroupRing RFModuleElement::scalar() const {
    auto it = terms_.find(Key{});
    return it == terms_.end() ? GroupRing() : it->second.second;
}

RFModuleElement& RFModuleElement::operator+=(const RFModuleElement& o) {
    for (const auto& [z, c] : o.terms()) add(z, c);
    return *this;
}

bool operator==(const RFModuleElement& a, const RFModuleElement& b) {
    RFModuleElement d = a;
    for (const auto& [z, c] : b.terms()) d.add(z, c.scaled(Int(-1)));
    return d.is_zero();
}

RFModuleElement induced_d1(const RFModuleElement& e, Backend backend) {
    RFModuleElement out;
    for (const auto& [z, coeff] : e.terms()) {
        if (z.size() < 1) throw Error("induced differential needs at least one tuple entry");
        TupleChain faces = boundary(canonical_tuple(z));
        for (const auto& [f, n] : faces.terms()) {
            CanonicalForm cf = canonicalize(f, backend);
            out.add(cf.tuple, coeff.translated(cf.cls).scaled(n));
        }
    }
    return out;
}

json point_to_json(const ProjPoint& p) {
    if (p.inf) return json{{"inf", true}};
    return field_to_json(p.value);
}

ProjPoint point_from_json(const json& j) {
    if (j.is_object() && j.contains("inf")) {
        if (!j.at("inf").get<bool>()) throw Error("malformed projective point");
        return ProjPoint::infinity();
    }
    return ProjPoint::finite(field_from_json(j));
}

json tuple_to_json(const ConfigTuple& t) {
    json out = json::array();
    for (const auto& p : t.points) out.push_back(point_to_json(p));
    return out;
}

ConfigTuple tuple_from_json(const json& j) {
    std::vector<ProjPoint> pts;
    for (const auto& p : j) pts.push_back(point_from_json(p));
    return ConfigTuple(std::move(pts));
}

json chain_to_json(const TupleChain& c) {
    json out = json::array();
    for (const auto& [t, n] : c.terms())
        out.push_back(json{{"tuple", tuple_to_json(t)}, {"n", n.str()}});
    return out;
}

json rf_module_to_json(const RFModuleElement& e) {
    json out = json::array();
    for (const auto& [z, coeff] : e.terms()) {
        json tuple = json::array();
        for (const auto& v : z.entries) tuple.push_back(field_to_json(v));
        out.push_back(json{{"tuple", std::move(tuple)}, {"coeff", group_ring_to_json(coeff)}});
    }
    return out;
}

RFModuleElement rf_module_from_json(const json& j) {
    RFModuleElement e;
    for (const auto& t : j) {
        std::vector<TowerElement> entries;
        for (const auto& v : t.at("tuple")) entries.push_back(field_from_json(v));
        e.add(ZTuple(std::move(entries)), group_ring_from_json(t.at("coeff")));
    }
    return e;
}

}  // namespace bloch
