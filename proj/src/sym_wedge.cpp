#include "bloch/sym_wedge.hpp"

#include "bloch/zsolve.hpp"

#include <algorithm>

namespace bloch {

namespace {

constexpr int kExponentBound = 64;

std::string describe(const TowerElement& x) {
    if (x.is_rational()) return rat_to_string(x.rational_value());
    std::string s = "tower[";
    for (size_t i = 0; i < x.coeff().size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(x.coeff()[i]);
    }
    return s + "]";
}

bool is_minus_one(const TowerElement& x) { return x.is_rational() && x.rational_value() == -1; }

double approx_value(const TowerElement& x) {
    if (x.is_rational()) return x.rational_value().convert_to<double>();
    auto [lo, hi] = interval_enclosure(x, 64);
    return ((lo + hi) / 2).convert_to<double>();
}

TowerElement int_power(const TowerElement& b, long long e) {
    TowerElement base = e < 0 ? b.inverse() : b;
    unsigned long long k = e < 0 ? (unsigned long long)(-e) : (unsigned long long)e;
    TowerElement acc(Rat(1), b.context());
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

struct FactorSearch {
    const std::vector<TowerElement>& entries;
    std::vector<double> log_abs;
    TowerElement one;

    std::vector<double> reach;  // max |log| coverable by entries at index > i

    explicit FactorSearch(const std::vector<TowerElement>& es)
        : entries(es), one(Rat(1), es.empty() ? TowerContext() : es[0].context()) {
        for (const auto& e : es) log_abs.push_back(std::log(std::fabs(approx_value(e))));
        reach.assign(es.size(), 0.0);
        double acc = 0.0;
        for (size_t i = es.size(); i-- > 0;) {
            reach[i] = acc + 1.0;
            acc += kExponentBound * std::fabs(log_abs[i]);
        }
    }

    // lr tracks log|residual|; the float estimate only guides exponent
    // selection, every accepted exponent is verified exactly
    bool dfs(size_t idx, const TowerElement& r, double lr, std::vector<Int>& out) const {
        const TowerElement& b = entries[idx];
        if (idx + 1 == entries.size()) {
            if (std::fabs(log_abs[idx]) < 1e-9) {  // entry is +-1
                for (long long e : {0LL, 1LL}) {
                    if (int_power(b, e) == r) {
                        out[idx] = e;
                        return true;
                    }
                }
                return false;
            }
            long long e0 = std::llround(lr / log_abs[idx]);
            for (long long e = e0 - 1; e <= e0 + 1; ++e) {
                if (std::llabs(e) > kExponentBound) continue;
                if (int_power(b, e) == r) {
                    out[idx] = e;
                    return true;
                }
            }
            return false;
        }
        if (is_minus_one(b)) {
            if (dfs(idx + 1, r, lr, out)) {
                out[idx] = 0;
                return true;
            }
            TowerElement neg = -r;
            if (dfs(idx + 1, neg, lr, out)) {
                out[idx] = 1;
                return true;
            }
            return false;
        }
        TowerElement binv = b.inverse();
        TowerElement rp = r, rn = r;
        if (std::fabs(lr) <= reach[idx] && dfs(idx + 1, r, lr, out)) {
            out[idx] = 0;
            return true;
        }
        for (int k = 1; k <= kExponentBound; ++k) {
            double down = lr - k * log_abs[idx], up = lr + k * log_abs[idx];
            if (std::fabs(down) > reach[idx] && std::fabs(up) > reach[idx] &&
                std::fabs(down) > std::fabs(lr) && std::fabs(up) > std::fabs(lr))
                break;  // both directions are diverging beyond what the tail can cancel
            rp = rp * binv;
            if (std::fabs(down) <= reach[idx] && dfs(idx + 1, rp, down, out)) {
                out[idx] = k;
                return true;
            }
            rn = rn * b;
            if (std::fabs(up) <= reach[idx] && dfs(idx + 1, rn, up, out)) {
                out[idx] = -k;
                return true;
            }
        }
        return false;
    }
};

bool factor_dfs(const std::vector<TowerElement>& entries, const TowerElement& r,
                std::vector<Int>& out) {
    if (entries.empty()) return r == TowerElement(Rat(1), r.context());
    FactorSearch fs(entries);
    return fs.dfs(0, r, std::log(std::fabs(approx_value(r))), out);
}

}  // namespace

MultiplicativeBasis::MultiplicativeBasis(Backend backend, std::vector<TowerElement> entries)
    : backend_(backend), entries_(std::move(entries)) {
    for (const auto& e : entries_) {
        if (e.is_zero()) throw Error("zero element in multiplicative basis");
        if (!e.is_rational()) all_rational_ = false;
        torsion_.push_back(is_minus_one(e));
    }
    if (!all_rational_) return;
    std::set<Int> primes;
    std::vector<std::map<Int, Int>> raw;
    for (const auto& e : entries_) {
        Rat v = e.rational_value();
        std::map<Int, Int> exps;
        for (auto& [p, k] : factorize(numerator(v))) exps[p] += k;
        for (auto& [p, k] : factorize(denominator(v))) exps[p] -= k;
        for (auto& [p, k] : exps)
            if (k != 0) primes.insert(p);
        raw.push_back(std::move(exps));
        entry_neg_.push_back(v < 0);
    }
    prime_rows_.assign(primes.begin(), primes.end());
    std::map<Int, int> row_of;
    for (size_t i = 0; i < prime_rows_.size(); ++i) row_of[prime_rows_[i]] = int(i);
    for (auto& exps : raw) {
        std::map<int, Int> col;
        for (auto& [p, k] : exps)
            if (k != 0) col[row_of[p]] = k;
        entry_cols_.push_back(std::move(col));
    }
}

MultiplicativeBasis MultiplicativeBasis::rational_for(const std::vector<Rat>& values) {
    std::set<Int> primes;
    for (const Rat& v : values) {
        if (v == 0) throw Error("zero has no square class");
        for (auto& [p, k] : factorize(numerator(v) * denominator(v))) primes.insert(p);
    }
    std::vector<TowerElement> entries;
    entries.emplace_back(Rat(-1));
    for (const Int& p : primes) entries.emplace_back(Rat(p));
    return MultiplicativeBasis(Backend::rational, std::move(entries));
}

std::optional<std::vector<Int>> MultiplicativeBasis::factor(const TowerElement& x) const {
    if (x.is_zero()) return std::nullopt;
    if (all_rational_ && x.is_rational()) {
        Rat v = x.rational_value();
        std::map<Int, Int> texp;
        for (auto& [p, k] : factorize(numerator(v))) texp[p] += k;
        for (auto& [p, k] : factorize(denominator(v))) texp[p] -= k;
        std::map<Int, int> row_of;
        for (size_t i = 0; i < prime_rows_.size(); ++i) row_of[prime_rows_[i]] = int(i);
        SparseVec rhs;
        for (auto& [p, k] : texp) {
            if (k == 0) continue;
            auto it = row_of.find(p);
            if (it == row_of.end()) return std::nullopt;
            rhs[it->second] = k;
        }
        std::vector<SparseVec> cols;
        for (const auto& col : entry_cols_) cols.emplace_back(col.begin(), col.end());
        auto sol = solve_integer(cols, rhs, int(prime_rows_.size()));
        if (!sol) return std::nullopt;
        bool neg = false;
        for (size_t i = 0; i < sol->size(); ++i) {
            if (abs((*sol)[i]) > kExponentBound) return std::nullopt;
            if (entry_neg_[i] && (*sol)[i] % 2 != 0) neg = !neg;
        }
        if (neg != (v < 0)) {
            // adjust via a sign-only entry (one with no odd prime content)
            bool fixed = false;
            for (size_t i = 0; i < entries_.size() && !fixed; ++i) {
                if (entry_neg_[i] && entry_cols_[i].empty()) {
                    (*sol)[i] += 1;
                    fixed = true;
                }
            }
            if (!fixed) return std::nullopt;
        }
        return sol;
    }
    TowerContext ctx = x.context();
    for (const auto& e : entries_) ctx = common_context(ctx, e.context());
    std::vector<TowerElement> promoted;
    for (const auto& e : entries_) promoted.push_back(e.promote_to(ctx));
    std::vector<Int> out(entries_.size(), Int(0));
    if (factor_dfs(promoted, x.promote_to(ctx), out)) return out;
    return std::nullopt;
}

std::vector<Int> MultiplicativeBasis::factor_or_throw(const TowerElement& x) const {
    if (auto e = factor(x)) return *e;
    throw Error("element does not factor over the declared basis: " + describe(x));
}

namespace {

void toggle(std::set<std::pair<int, int>>& s, const std::pair<int, int>& k) {
    if (!s.insert(k).second) s.erase(k);
}

}  // namespace

SymSquareElement& SymSquareElement::operator+=(const SymSquareElement& o) {
    for (const auto& [k, v] : o.off) {
        Int& t = off[k];
        t += v;
        if (t == 0) off.erase(k);
    }
    for (const auto& k : o.tor2) toggle(tor2, k);
    for (int i : o.diag) {
        if (!diag.insert(i).second) diag.erase(i);
    }
    return *this;
}

SymSquareElement SymSquareElement::scaled(const Int& n) const {
    SymSquareElement r;
    if (n == 0) return r;
    for (const auto& [k, v] : off) r.off[k] = v * n;
    if (n % 2 != 0) {
        r.tor2 = tor2;
        r.diag = diag;
    }
    return r;
}

WedgeElement& WedgeElement::operator+=(const WedgeElement& o) {
    for (const auto& [k, v] : o.terms) {
        Int& t = terms[k];
        t += v;
        if (t == 0) terms.erase(k);
    }
    for (const auto& k : o.tor2) toggle(tor2, k);
    return *this;
}

WedgeElement WedgeElement::scaled(const Int& n) const {
    WedgeElement r;
    if (n == 0) return r;
    for (const auto& [k, v] : terms) r.terms[k] = v * n;
    if (n % 2 != 0) r.tor2 = tor2;
    return r;
}

SymSquareElement expand_sym(const TowerElement& x, const TowerElement& y,
                            const MultiplicativeBasis& basis) {
    auto ex = basis.factor_or_throw(x);
    auto ey = basis.factor_or_throw(y);
    SymSquareElement r;
    const int n = int(basis.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (basis.is_torsion(i) || basis.is_torsion(j)) {
                if ((ex[i] * ey[j] + ex[j] * ey[i]) % 2 != 0) r.tor2.insert({i, j});
            } else {
                Int c = ex[i] * ey[j] - ex[j] * ey[i];
                if (c != 0) r.off[{i, j}] = c;
            }
        }
    for (int i = 0; i < n; ++i)
        if ((ex[i] * ey[i]) % 2 != 0) r.diag.insert(i);
    return r;
}

WedgeElement expand_wedge(const TowerElement& x, const TowerElement& y,
                          const MultiplicativeBasis& basis) {
    auto ex = basis.factor_or_throw(x);
    auto ey = basis.factor_or_throw(y);
    WedgeElement r;
    const int n = int(basis.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Int c = ex[i] * ey[j] - ex[j] * ey[i];
            if (basis.is_torsion(i) || basis.is_torsion(j)) {
                if (c % 2 != 0) r.tor2.insert({i, j});
            } else if (c != 0) {
                r.terms[{i, j}] = c;
            }
        }
    return r;
}

HalveWedgeResult halve_wedge(const TowerElement& x, const TowerElement& y) {
    if (x.is_zero() || y.is_zero()) throw Error("wedge argument must be nonzero");
    bool xneg = sign(x) == Sign::negative;
    bool yneg = sign(y) == Sign::negative;
    auto sx = sqrt_positive(xneg ? -x : x);
    auto sy = sqrt_positive((yneg ? -y : y).promote_to(sx.context));
    TowerContext ctx = sy.context;
    TowerElement s = sx.root.promote_to(ctx), t = sy.root;

    std::vector<TowerElement> entries{TowerElement(Rat(-1), ctx)};
    auto index_of = [&](const TowerElement& e) {
        // the unit root (x or y = +-1) spans nothing; -1 marks "no index"
        if (e == TowerElement(Rat(1), ctx)) return -1;
        for (size_t i = 0; i < entries.size(); ++i)
            if (entries[i] == e) return int(i);
        entries.push_back(e);
        return int(entries.size() - 1);
    };
    int is = index_of(s), it = index_of(t);

    // x wedge y = (sgn_x s^2) wedge (sgn_y t^2)
    //           = 2 * (sgn_x wedge t  +  s wedge sgn_y  +  2 s wedge t)
    WedgeElement w, whole;
    auto add = [&](WedgeElement& out, int i, int j, Int c) {
        if (i < 0 || j < 0 || i == j || c == 0) return;
        if (i > j) {
            std::swap(i, j);
            c = -c;
        }
        if (i == 0) {  // pairs against the torsion entry -1 live in Z/2
            if (c % 2 != 0) toggle(out.tor2, {i, j});
            return;
        }
        Int& v = out.terms[{i, j}];
        v += c;
        if (v == 0) out.terms.erase(std::pair<int, int>{i, j});
    };
    if (xneg) add(w, 0, it, 1);
    if (yneg) add(w, is, 0, 1);
    add(w, is, it, 2);

    std::vector<Int> ex(entries.size(), Int(0)), ey(entries.size(), Int(0));
    if (xneg) ex[0] += 1;
    if (is >= 0) ex[size_t(is)] += 2;
    if (yneg) ey[0] += 1;
    if (it >= 0) ey[size_t(it)] += 2;
    for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = i + 1; j < entries.size(); ++j)
            add(whole, int(i), int(j), ex[i] * ey[j] - ex[j] * ey[i]);

    return {std::move(w),        std::move(whole), std::move(ex), std::move(ey),
            MultiplicativeBasis(Backend::tower, entries), ctx};
}

bool verify_halving(const HalveWedgeResult& hw, const TowerElement& x, const TowerElement& y) {
    auto power_product = [&](const std::vector<Int>& exps) {
        TowerElement out(Rat(1), hw.context);
        for (size_t i = 0; i < exps.size(); ++i) {
            TowerElement base = hw.basis.entries()[i].promote_to(hw.context);
            long long e = exps[i].convert_to<long long>();
            if (e < 0) {
                base = base.inverse();
                e = -e;
            }
            for (long long k = 0; k < e; ++k) out = out * base;
        }
        return out;
    };
    if (hw.x_exponents.size() != hw.basis.size() || hw.y_exponents.size() != hw.basis.size())
        return false;
    if (power_product(hw.x_exponents) != x.promote_to(hw.context)) return false;
    if (power_product(hw.y_exponents) != y.promote_to(hw.context)) return false;

    WedgeElement whole;
    for (size_t i = 0; i < hw.basis.size(); ++i)
        for (size_t j = i + 1; j < hw.basis.size(); ++j) {
            Int c = hw.x_exponents[i] * hw.y_exponents[j] - hw.x_exponents[j] * hw.y_exponents[i];
            if (c == 0) continue;
            if (i == 0) {
                if (c % 2 != 0) toggle(whole.tor2, {int(i), int(j)});
            } else {
                whole.terms[{int(i), int(j)}] = c;
            }
        }
    return hw.whole == whole && hw.half.scaled(Int(2)) == hw.whole;
}

}  // namespace bloch
