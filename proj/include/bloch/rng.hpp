#ifndef BLOCH_RNG_HPP
#define BLOCH_RNG_HPP

#include "bloch/field.hpp"

#include <cstdint>

namespace bloch {

/// The single deterministic randomness source: splitmix64. All sampled test
/// data flows from one seed through this generator, making runs reproducible
/// bit for bit.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t below(uint64_t n) { return next() % n; }

    // uniform in [lo, hi]
    long long range(long long lo, long long hi) {
        return lo + (long long)below(uint64_t(hi - lo + 1));
    }

    /// Nonzero rational with numerator and denominator of modest height.
    Rat rational(long long height = 20) {
        long long num = 0;
        while (num == 0) num = range(-height, height);
        return Rat(num, range(1, height));
    }

    Rat rational_excluding_01(long long height = 20) {
        while (true) {
            Rat q = rational(height);
            if (q != 0 && q != 1) return q;
        }
    }

    /// Random element of a quadratic tower of the given depth built from
    /// small prime radicands; coefficients of modest height.
    TowerElement tower_element(int depth, long long height = 8) {
        static const long long radicands[] = {2, 3, 5, 7, 11, 13};
        TowerContext ctx;
        for (int i = 0; i < depth; ++i) {
            long long r = radicands[below(6)];
            auto res = sqrt_positive(TowerElement(Rat(r), ctx));
            if (res.context == ctx) continue;  // already a square here
            ctx = res.context;
        }
        std::vector<Rat> coeff(size_t(1) << context_depth(ctx));
        for (auto& c : coeff) c = Rat(range(-height, height), range(1, height));
        return TowerElement(ctx, std::move(coeff));
    }

    TowerElement element_in(const TowerContext& ctx, long long height = 8) {
        std::vector<Rat> coeff(size_t(1) << context_depth(ctx));
        for (auto& c : coeff) c = Rat(range(-height, height), range(1, height));
        return TowerElement(ctx, std::move(coeff));
    }

    TowerElement nonzero_tower_element(int depth, long long height = 8) {
        while (true) {
            TowerElement t = tower_element(depth, height);
            if (!t.is_zero()) return t;
        }
    }
};

}  // namespace bloch

#endif
