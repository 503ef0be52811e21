#include "bloch/numeric.hpp"

#include <boost/multiprecision/integer.hpp>

namespace bloch {

Int isqrt(const Int& n) {
    if (n < 0) throw Error("isqrt of negative number");
    return boost::multiprecision::sqrt(n);
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = isqrt(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

std::optional<Rat> rat_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    Int rn, rd;
    if (!is_perfect_square(numerator(q), &rn)) return std::nullopt;
    if (!is_perfect_square(denominator(q), &rd)) return std::nullopt;
    return Rat(rn, rd);
}

void extract_square_part(const Int& n, Int& square_root_part, Int& rest,
                         unsigned long trial_bound) {
    if (n == 0) throw Error("extract_square_part of zero");
    Int m = abs(n);
    Int s = 1;
    for (Int d = 2; d * d <= m && d <= trial_bound; ++d) {
        while (m % (d * d) == 0) {
            m /= d * d;
            s *= d;
        }
    }
    Int r;
    if (is_perfect_square(m, &r)) {
        s *= r;
        m = 1;
    }
    square_root_part = s;
    rest = n < 0 ? Int(-m) : m;
}

namespace {

Int mulmod(const Int& a, const Int& b, const Int& m) { return a * b % m; }

Int powmod(Int base, Int exp, const Int& m) {
    Int r = 1;
    base %= m;
    while (exp > 0) {
        if (bit_test(exp, 0)) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool miller_rabin(const Int& n) {
    if (n < 2) return false;
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    Int d = n - 1;
    int s = 0;
    while (!bit_test(d, 0)) {
        d >>= 1;
        ++s;
    }
    for (int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Int x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

Int pollard_rho(const Int& n) {
    if (n % 2 == 0) return 2;
    Int x = 2, y = 2, c = 1;
    while (true) {
        x = 2;
        y = 2;
        Int d = 1;
        while (d == 1) {
            x = (mulmod(x, x, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            y = (mulmod(y, y, n) + c) % n;
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
        ++c;
    }
}

void factor_into(Int n, std::vector<std::pair<Int, int>>& out) {
    if (n == 1) return;
    if (miller_rabin(n)) {
        out.emplace_back(n, 1);
        return;
    }
    for (Int d = 2; d <= 100000 && d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            out.emplace_back(d, e);
            if (n == 1) return;
            factor_into(n, out);
            return;
        }
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n == 0) throw Error("factorize(0)");
    n = abs(n);
    std::vector<std::pair<Int, int>> raw;
    factor_into(n, raw);
    // merge duplicates (pollard can split a prime power)
    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<Int, int>> out;
    for (auto& [p, e] : raw) {
        if (!out.empty() && out.back().first == p)
            out.back().second += e;
        else
            out.emplace_back(p, e);
    }
    return out;
}

std::string rat_to_string(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw DivisionByZero();
        return Rat(num, den);
    } catch (const std::exception& e) {
        throw Error("bad rational literal '" + s + "'");
    }
}

}  // namespace bloch
