#include "bloch/bloch.hpp"

#include "bloch/zsolve.hpp"

#include <set>

namespace bloch {

namespace {

std::vector<Rat> pad_key(const std::vector<Rat>& key, size_t n) {
    std::vector<Rat> k(n, Rat(0));
    std::copy(key.begin(), key.end(), k.begin());
    return k;
}

bool key_is_one(const std::vector<Rat>& key) {
    if (key[0] != 1) return false;
    for (size_t i = 1; i < key.size(); ++i)
        if (key[i] != 0) return false;
    return true;
}

}  // namespace

RPElement RPElement::generator(const TowerElement& x, GroupRing coeff) {
    if (x.is_zero()) throw Error("[0] is not a generator");
    RPElement e;
    TowerElement c = x.demote();
    e.ctx_ = c.context();
    if (!coeff.is_zero() && !key_is_one(c.coeff())) e.terms_[c.coeff()] = std::move(coeff);
    return e;
}

std::vector<TowerElement> RPElement::support() const {
    std::vector<TowerElement> out;
    for (const auto& [k, v] : terms_) out.push_back(TowerElement(ctx_, k).demote());
    return out;
}

GroupRing RPElement::coefficient(const TowerElement& x) const {
    TowerElement c = x.demote();
    TowerContext ctx = common_context(ctx_, c.context());
    RPElement tmp = *this;
    tmp.promote_ambient(ctx);
    auto it = tmp.terms_.find(c.promote_to(ctx).coeff());
    return it == tmp.terms_.end() ? GroupRing() : it->second;
}

void RPElement::promote_ambient(const TowerContext& ctx) {
    if (ctx.get() == ctx_.get()) return;
    size_t n = size_t(1) << context_depth(ctx);
    std::map<std::vector<Rat>, GroupRing> t;
    for (auto& [k, v] : terms_) t[pad_key(k, n)] = std::move(v);
    terms_ = std::move(t);
    ctx_ = ctx;
}

RPElement& RPElement::operator+=(const RPElement& o) {
    RPElement rhs = o;
    TowerContext ctx = common_context(ctx_, o.ctx_);
    promote_ambient(ctx);
    rhs.promote_ambient(ctx);
    for (auto& [k, v] : rhs.terms_) {
        GroupRing& t = terms_[k];
        t += v;
        if (t.is_zero()) terms_.erase(k);
    }
    return *this;
}

RPElement& RPElement::operator-=(const RPElement& o) { return *this += o.scaled(Int(-1)); }

RPElement RPElement::operator-() const { return scaled(Int(-1)); }

RPElement RPElement::scaled(const Int& n) const {
    RPElement r;
    r.ctx_ = ctx_;
    if (n == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_[k] = v.scaled(n);
    return r;
}

RPElement RPElement::translated(const SquareClass& c) const {
    RPElement r;
    r.ctx_ = ctx_;
    for (const auto& [k, v] : terms_) r.terms_[k] = v.translated(c);
    return r;
}

RPElement RPElement::times(const GroupRing& g) const {
    RPElement r;
    r.ctx_ = ctx_;
    for (const auto& [k, v] : terms_) {
        GroupRing p = v * g;
        if (!p.is_zero()) r.terms_[k] = std::move(p);
    }
    return r;
}

PElement PElement::generator(const TowerElement& x, Int coeff) {
    if (x.is_zero()) throw Error("[0] is not a generator");
    PElement e;
    TowerElement c = x.demote();
    e.ctx_ = c.context();
    if (coeff != 0 && !key_is_one(c.coeff())) e.terms_[c.coeff()] = std::move(coeff);
    return e;
}

std::vector<TowerElement> PElement::support() const {
    std::vector<TowerElement> out;
    for (const auto& [k, v] : terms_) out.push_back(TowerElement(ctx_, k).demote());
    return out;
}

void PElement::promote_ambient(const TowerContext& ctx) {
    if (ctx.get() == ctx_.get()) return;
    size_t n = size_t(1) << context_depth(ctx);
    std::map<std::vector<Rat>, Int> t;
    for (auto& [k, v] : terms_) t[pad_key(k, n)] = std::move(v);
    terms_ = std::move(t);
    ctx_ = ctx;
}

PElement& PElement::operator+=(const PElement& o) {
    PElement rhs = o;
    TowerContext ctx = common_context(ctx_, o.ctx_);
    promote_ambient(ctx);
    rhs.promote_ambient(ctx);
    for (auto& [k, v] : rhs.terms_) {
        Int& t = terms_[k];
        t += v;
        if (t == 0) terms_.erase(k);
    }
    return *this;
}

PElement& PElement::operator-=(const PElement& o) { return *this += o.scaled(Int(-1)); }

PElement PElement::operator-() const { return scaled(Int(-1)); }

PElement PElement::scaled(const Int& n) const {
    PElement r;
    r.ctx_ = ctx_;
    if (n == 0) return r;
    for (const auto& [k, v] : terms_) r.terms_[k] = v * n;
    return r;
}

void require_relation_args(const TowerElement& x, const TowerElement& y) {
    if (x.is_zero() || y.is_zero()) throw Error("relation argument is zero");
    if (x == TowerElement(Rat(1), x.context()) || y == TowerElement(Rat(1), y.context()))
        throw Error("relation argument is one");
    if (x == y) throw Error("relation arguments coincide");
}

RPElement s_relation(const TowerElement& x, const TowerElement& y, Backend backend) {
    require_relation_args(x, y);
    TowerContext ctx = common_context(x.context(), y.context());
    TowerElement xx = x.promote_to(ctx), yy = y.promote_to(ctx);
    TowerElement one(Rat(1), ctx);
    RPElement e = RPElement::generator(xx);
    e += RPElement::generator(yy, GroupRing(Int(-1)));
    e += RPElement::generator(yy / xx, GroupRing::of_class(square_class(xx, backend)));
    e += RPElement::generator((one - xx.inverse()) / (one - yy.inverse()),
                              GroupRing(square_class(xx.inverse() - one, backend), Int(-1)));
    e += RPElement::generator((one - xx) / (one - yy),
                              GroupRing::of_class(square_class(one - xx, backend)));
    return e;
}

PElement r_relation(const TowerElement& x, const TowerElement& y) {
    require_relation_args(x, y);
    TowerContext ctx = common_context(x.context(), y.context());
    TowerElement xx = x.promote_to(ctx), yy = y.promote_to(ctx);
    TowerElement one(Rat(1), ctx);
    PElement e = PElement::generator(xx);
    e += PElement::generator(yy, Int(-1));
    e += PElement::generator(yy / xx);
    e += PElement::generator((one - xx.inverse()) / (one - yy.inverse()), Int(-1));
    e += PElement::generator((one - xx) / (one - yy));
    return e;
}

RPElement psi1(const TowerElement& x) {
    if (x.is_zero()) throw Error("psi1(0) undefined");
    RPElement e = RPElement::generator(x);
    e += RPElement::generator(x.inverse(), GroupRing::of_class(kClassMinusOne));
    return e;
}

RPElement psi2(const TowerElement& x, Backend backend) {
    if (x.is_zero()) throw Error("psi2(0) undefined");
    TowerElement one(Rat(1), x.context());
    if (x == one) return RPElement();
    RPElement e = RPElement::generator(x, GroupRing::of_class(square_class(x.inverse() - one, backend)));
    e += RPElement::generator(x.inverse(), GroupRing::of_class(square_class(one - x, backend)));
    return e;
}

RPElement c_element(const TowerElement& x, Backend backend) {
    if (x.is_zero()) throw Error("C(0) undefined");
    TowerElement one(Rat(1), x.context());
    if (x == one) throw Error("C(1) undefined");
    RPElement e = RPElement::generator(x);
    e += RPElement::generator(one - x, GroupRing::of_class(kClassMinusOne));
    e += psi1(x).times(bracket(one - x, backend));
    return e;
}

PElement coinvariants(const RPElement& e) {
    PElement p;
    for (const auto& [k, v] : e.terms()) {
        Int n = epsilon(v);
        if (n != 0) p += PElement::generator(TowerElement(e.context(), k), n);
    }
    return p;
}

GroupRing lambda1(const RPElement& e, Backend backend) {
    GroupRing out;
    for (const auto& [k, v] : e.terms()) {
        TowerElement x(e.context(), k);
        TowerElement one(Rat(1), e.context());
        out += v * bracket(one - x, backend) * bracket(x, backend);
    }
    return out;
}

SymSquareElement lambda2(const PElement& e, const MultiplicativeBasis& basis) {
    SymSquareElement out;
    for (const auto& [k, v] : e.terms()) {
        TowerElement x(e.context(), k);
        TowerElement one(Rat(1), e.context());
        out += expand_sym(one - x, x, basis).scaled(v);
    }
    return out;
}

LambdaTarget big_lambda(const RPElement& e, const MultiplicativeBasis& basis, Backend backend) {
    return {lambda1(e, backend), lambda2(coinvariants(e), basis)};
}

bool in_aug_ideal_squared(const GroupRing& r) {
    if (r.is_zero()) return true;
    std::set<SquareClass> classes{kClassOne, kClassMinusOne};
    for (const auto& [c, n] : r.terms()) classes.insert(c);
    std::vector<SquareClass> cls(classes.begin(), classes.end());
    std::map<SquareClass, int> row;
    auto row_of = [&](const SquareClass& c) {
        auto [it, fresh] = row.emplace(c, int(row.size()));
        return it->second;
    };
    std::vector<SparseVec> cols;
    for (size_t i = 0; i < cls.size(); ++i) {
        if (cls[i].is_one()) continue;
        for (size_t j = i; j < cls.size(); ++j) {
            if (cls[j].is_one()) continue;
            GroupRing prod = bracket(cls[i]) * bracket(cls[j]);
            SparseVec col;
            for (const auto& [c, n] : prod.terms()) col[row_of(c)] = n;
            cols.push_back(std::move(col));
        }
    }
    SparseVec rhs;
    for (const auto& [c, n] : r.terms()) rhs[row_of(c)] = n;
    return solve_integer(cols, rhs, int(row.size())).has_value();
}

std::string rp_to_string(const RPElement& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& x : e.support()) {
        if (!s.empty()) s += " + ";
        std::string xs = x.is_rational() ? rat_to_string(x.rational_value()) : "(tower)";
        s += "(" + group_ring_to_string(e.coefficient(x)) + ")[" + xs + "]";
    }
    return s;
}

}  // namespace bloch
