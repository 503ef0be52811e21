#include "bloch/field.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace bloch {

namespace {

using Span = std::vector<Rat>;

// root-first list of tower nodes
std::vector<const Tower*> chain_of(const TowerContext& ctx) {
    std::vector<const Tower*> chain;
    for (const Tower* t = ctx.get(); t; t = t->parent.get()) chain.push_back(t);
    std::reverse(chain.begin(), chain.end());
    return chain;
}

Span add_span(const Span& a, const Span& b) {
    Span r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Span sub_span(const Span& a, const Span& b) {
    Span r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Span scale_span(const Span& a, const Rat& c) {
    Span r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

bool span_zero(const Span& a) {
    for (const auto& c : a)
        if (c != 0) return false;
    return true;
}

Span lo_half(const Span& a) { return Span(a.begin(), a.begin() + a.size() / 2); }
Span hi_half(const Span& a) { return Span(a.begin() + a.size() / 2, a.end()); }

Span join(Span lo, const Span& hi) {
    lo.insert(lo.end(), hi.begin(), hi.end());
    return lo;
}

Span mul_span(const std::vector<const Tower*>& chain, int level, const Span& a, const Span& b) {
    if (level == 0) return {a[0] * b[0]};
    const Span& r = chain[level - 1]->radicand->coeff();
    Span a0 = lo_half(a), a1 = hi_half(a);
    Span b0 = lo_half(b), b1 = hi_half(b);
    Span low = add_span(mul_span(chain, level - 1, a0, b0),
                        mul_span(chain, level - 1, mul_span(chain, level - 1, a1, b1), r));
    Span high = add_span(mul_span(chain, level - 1, a0, b1), mul_span(chain, level - 1, a1, b0));
    return join(std::move(low), high);
}

// precondition: a is not the zero element at this level
Span inv_span(const std::vector<const Tower*>& chain, int level, const Span& a) {
    if (level == 0) {
        if (a[0] == 0) throw DivisionByZero();
        return {1 / a[0]};
    }
    Span a0 = lo_half(a), a1 = hi_half(a);
    if (span_zero(a1)) return join(inv_span(chain, level - 1, a0), a1);
    const Span& r = chain[level - 1]->radicand->coeff();
    // (a0 + a1 s)^-1 = (a0 - a1 s) / (a0^2 - a1^2 r); the denominator is
    // nonzero because r is not a square in the sub-tower
    Span d = sub_span(mul_span(chain, level - 1, a0, a0),
                      mul_span(chain, level - 1, mul_span(chain, level - 1, a1, a1), r));
    Span dinv = inv_span(chain, level - 1, d);
    Span low = mul_span(chain, level - 1, a0, dinv);
    Span high = scale_span(mul_span(chain, level - 1, a1, dinv), Rat(-1));
    return join(std::move(low), high);
}

}  // namespace

int context_depth(const TowerContext& ctx) { return ctx ? ctx->depth : 0; }

bool is_ancestor(const TowerContext& anc, const TowerContext& desc) {
    const Tower* a = anc.get();
    for (const Tower* t = desc.get(); ; t = t->parent.get()) {
        if (t == a) return true;
        if (!t) return false;
    }
}

TowerContext common_context(const TowerContext& a, const TowerContext& b) {
    if (context_depth(a) >= context_depth(b)) {
        if (!is_ancestor(b, a)) throw ContextMismatch("unrelated tower contexts");
        return a;
    }
    if (!is_ancestor(a, b)) throw ContextMismatch("unrelated tower contexts");
    return b;
}

TowerElement::TowerElement(Rat value, TowerContext ctx) : ctx_(std::move(ctx)) {
    coeff_.assign(size_t(1) << context_depth(ctx_), Rat(0));
    coeff_[0] = std::move(value);
}

TowerElement::TowerElement(TowerContext ctx, std::vector<Rat> coeff)
    : ctx_(std::move(ctx)), coeff_(std::move(coeff)) {
    if (coeff_.size() != size_t(1) << context_depth(ctx_))
        throw Error("coefficient vector does not match tower depth");
}

bool TowerElement::is_zero() const { return span_zero(coeff_); }

bool TowerElement::is_rational() const {
    for (size_t i = 1; i < coeff_.size(); ++i)
        if (coeff_[i] != 0) return false;
    return true;
}

Rat TowerElement::rational_value() const {
    if (!is_rational()) throw Error("element is not rational");
    return coeff_[0];
}

TowerElement TowerElement::promote_to(const TowerContext& ctx) const {
    if (ctx.get() == ctx_.get()) return *this;
    if (!is_ancestor(ctx_, ctx)) throw ContextMismatch("promotion target is not a descendant context");
    std::vector<Rat> c(size_t(1) << context_depth(ctx), Rat(0));
    std::copy(coeff_.begin(), coeff_.end(), c.begin());
    return TowerElement(ctx, std::move(c));
}

TowerElement TowerElement::demote() const {
    TowerContext ctx = ctx_;
    std::vector<Rat> c = coeff_;
    while (ctx && span_zero(hi_half(c))) {
        c = lo_half(c);
        ctx = ctx->parent;
    }
    return TowerElement(ctx, std::move(c));
}

TowerElement operator+(const TowerElement& a, const TowerElement& b) {
    TowerContext ctx = common_context(a.ctx_, b.ctx_);
    return TowerElement(ctx, add_span(a.promote_to(ctx).coeff_, b.promote_to(ctx).coeff_));
}

TowerElement operator-(const TowerElement& a, const TowerElement& b) {
    TowerContext ctx = common_context(a.ctx_, b.ctx_);
    return TowerElement(ctx, sub_span(a.promote_to(ctx).coeff_, b.promote_to(ctx).coeff_));
}

TowerElement operator*(const TowerElement& a, const TowerElement& b) {
    TowerContext ctx = common_context(a.ctx_, b.ctx_);
    auto chain = chain_of(ctx);
    return TowerElement(ctx, mul_span(chain, int(chain.size()), a.promote_to(ctx).coeff_,
                                      b.promote_to(ctx).coeff_));
}

TowerElement TowerElement::operator-() const { return TowerElement(ctx_, scale_span(coeff_, Rat(-1))); }

TowerElement TowerElement::inverse() const {
    if (is_zero()) throw DivisionByZero();
    auto chain = chain_of(ctx_);
    return TowerElement(ctx_, inv_span(chain, int(chain.size()), coeff_));
}

TowerElement operator/(const TowerElement& a, const TowerElement& b) {
    TowerContext ctx = common_context(a.ctx_, b.ctx_);
    return a.promote_to(ctx) * b.promote_to(ctx).inverse();
}

bool operator==(const TowerElement& a, const TowerElement& b) {
    TowerContext ctx = common_context(a.ctx_, b.ctx_);
    return a.promote_to(ctx).coeff_ == b.promote_to(ctx).coeff_;
}

bool lex_less(const TowerElement& a, const TowerElement& b) {
    TowerContext ctx = common_context(a.context(), b.context());
    return a.promote_to(ctx).coeff() < b.promote_to(ctx).coeff();
}

namespace {

// closed rational interval with endpoints kept at bounded denominator
struct Ival {
    Rat lo, hi;
};

Rat round_down(const Rat& q, unsigned p) {
    Int scaled = (numerator(q) << p) / denominator(q);
    if (q < 0 && Rat(scaled, Int(1) << p) != q) scaled -= 1;
    return Rat(scaled, Int(1) << p);
}

Rat round_up(const Rat& q, unsigned p) {
    Int scaled = (numerator(q) << p) / denominator(q);
    if (q > 0 && Rat(scaled, Int(1) << p) != q) scaled += 1;
    return Rat(scaled, Int(1) << p);
}

Ival rnd(const Ival& v, unsigned p) { return {round_down(v.lo, p), round_up(v.hi, p)}; }

Ival iadd(const Ival& a, const Ival& b, unsigned p) { return rnd({a.lo + b.lo, a.hi + b.hi}, p); }

Ival imul(const Ival& a, const Ival& b, unsigned p) {
    Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Rat lo = c[0], hi = c[0];
    for (int i = 1; i < 4; ++i) {
        if (c[i] < lo) lo = c[i];
        if (c[i] > hi) hi = c[i];
    }
    return rnd({lo, hi}, p);
}

// enclosure of sqrt of a nonnegative interval
Ival isqrt_ival(const Ival& a, unsigned p) {
    Rat lo = a.lo < 0 ? Rat(0) : a.lo;
    Int nlo = (numerator(lo) << (2 * p)) / denominator(lo);
    Rat slo = Rat(isqrt(nlo), Int(1) << p);
    Int nhi = (numerator(a.hi) << (2 * p)) / denominator(a.hi) + 1;
    Rat shi = Rat(isqrt(nhi) + 1, Int(1) << p);
    return {slo, shi};
}

Ival eval_span(const std::vector<const Tower*>& chain, int level, const Span& a, unsigned p) {
    if (level == 0) return rnd({a[0], a[0]}, p);
    Ival lo = eval_span(chain, level - 1, lo_half(a), p);
    Ival hi = eval_span(chain, level - 1, hi_half(a), p);
    Ival rad = eval_span(chain, level - 1, chain[level - 1]->radicand->coeff(), p);
    return iadd(lo, imul(hi, isqrt_ival(rad, p), p), p);
}

}  // namespace

std::pair<Rat, Rat> interval_enclosure(const TowerElement& a, unsigned precision_bits) {
    auto chain = chain_of(a.context());
    Ival v = eval_span(chain, int(chain.size()), a.coeff(), precision_bits);
    return {v.lo, v.hi};
}

Sign sign(const TowerElement& a) {
    if (a.is_zero()) return Sign::zero;
    if (a.is_rational()) return a.rational_value() > 0 ? Sign::positive : Sign::negative;
    // exactly nonzero, so refinement terminates
    for (unsigned p = 32;; p *= 2) {
        auto [lo, hi] = interval_enclosure(a, p);
        if (lo > 0) return Sign::positive;
        if (hi < 0) return Sign::negative;
    }
}

bool is_positive(const TowerElement& a) { return sign(a) == Sign::positive; }

std::optional<TowerElement> sqrt_in_tower(const TowerElement& x) {
    const TowerContext& ctx = x.context();
    if (!ctx) {
        auto r = rat_sqrt(x.rational_value());
        if (!r) return std::nullopt;
        return TowerElement(*r);
    }
    TowerElement A(ctx->parent, lo_half(x.coeff()));
    TowerElement B(ctx->parent, hi_half(x.coeff()));
    const TowerElement& r = *ctx->radicand;
    auto lift = [&](const TowerElement& lo, const TowerElement& hi) {
        return TowerElement(ctx, join(lo.coeff(), hi.coeff()));
    };
    TowerElement zero(Rat(0), ctx->parent);
    if (B.is_zero()) {
        if (auto s = sqrt_in_tower(A)) return lift(*s, zero);
        if (auto t = sqrt_in_tower(A / r)) return lift(zero, *t);
        return std::nullopt;
    }
    // (a + b sqrt(r))^2 = x with b != 0: a^2 = (A +- sqrt(A^2 - B^2 r)) / 2
    TowerElement D = A * A - B * B * r;
    auto s = sqrt_in_tower(D);
    if (!s) return std::nullopt;
    for (int branch = 0; branch < 2; ++branch) {
        TowerElement cand = branch == 0 ? (A + *s) / TowerElement(Rat(2), nullptr)
                                        : (A - *s) / TowerElement(Rat(2), nullptr);
        if (cand.is_zero()) continue;
        if (auto a = sqrt_in_tower(cand)) {
            if (a->is_zero()) continue;
            TowerElement b = B / (*a + *a);
            TowerElement root = lift(*a, b);
            if (root * root == x) return root;
        }
    }
    return std::nullopt;
}

SqrtResult sqrt_positive(const TowerElement& x, int depth_cap) {
    if (sign(x) != Sign::positive) throw Error("sqrt_positive requires a positive argument");
    if (auto s = sqrt_in_tower(x)) {
        TowerElement root = is_positive(*s) ? *s : -*s;
        return {root, x.context()};
    }
    // normalize: pull out the rational square content so radicands are canonical
    TowerElement rad = x;
    Rat content(1);
    if (x.is_rational()) {
        Rat q = x.rational_value();
        Int m = numerator(q) * denominator(q);
        Int sq, rest;
        extract_square_part(m, sq, rest);
        content = Rat(sq, denominator(q));
        rad = TowerElement(Rat(rest), x.context());
    } else {
        Int num_gcd = 0, den_lcm = 1;
        for (const auto& c : x.coeff()) {
            if (c == 0) continue;
            num_gcd = gcd(num_gcd, numerator(c));
            den_lcm = lcm(den_lcm, denominator(c));
        }
        Rat cont = Rat(abs(num_gcd), den_lcm);
        Int sq, rest;
        extract_square_part(numerator(cont) * denominator(cont), sq, rest);
        content = Rat(sq, denominator(cont));
        rad = x / TowerElement(content * content, nullptr);
    }
    TowerContext ext = extend_context(x.context(), rad, depth_cap);
    std::vector<Rat> c(size_t(1) << ext->depth, Rat(0));
    c[size_t(1) << (ext->depth - 1)] = content;  // content * sqrt(rad)
    return {TowerElement(ext, std::move(c)), ext};
}

TowerContext extend_context(const TowerContext& parent, const TowerElement& radicand,
                            int depth_cap) {
    if (context_depth(parent) + 1 > depth_cap)
        throw Error("tower depth cap exceeded (cap " + std::to_string(depth_cap) + ")");
    TowerElement rad = radicand.promote_to(parent);
    if (sign(rad) != Sign::positive) throw Error("radicand must be positive");
    if (sqrt_in_tower(rad)) throw Error("radicand is already a square in its context");
    // intern extensions so independently rebuilt chains share nodes and their
    // elements stay mutually compatible
    static std::mutex mu;
    static std::map<std::pair<const Tower*, std::vector<Rat>>, TowerContext> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(parent.get(), rad.coeff());
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    auto node = std::make_shared<Tower>();
    node->parent = parent;
    node->radicand = std::make_shared<TowerElement>(rad);
    node->depth = context_depth(parent) + 1;
    TowerContext ext(node);
    cache.emplace(std::move(key), ext);
    return ext;
}

}  // namespace bloch
