#ifndef BLOCH_NUMERIC_HPP
#define BLOCH_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bloch {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

struct ContextMismatch : Error {
    explicit ContextMismatch(const std::string& what) : Error(what) {}
};

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

bool is_perfect_square(const Int& n, Int* root = nullptr);

/// Exact square root of a rational, if it is one.
std::optional<Rat> rat_sqrt(const Rat& q);

/// n = square * squarefree_ish. Factors out every square divisor found by
/// trial division up to the given bound plus a perfect-square cofactor check;
/// large squarefree cofactors are left alone (good enough for radicand
/// normalization, which only has to be canonical, not complete).
void extract_square_part(const Int& n, Int& square_root_part, Int& rest,
                         unsigned long trial_bound = 100000);

bool miller_rabin(const Int& n);

/// Full factorization (trial division + Pollard rho). Intended for the
/// modest numerators/denominators that show up in square-class computations.
std::vector<std::pair<Int, int>> factorize(Int n);

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

}  // namespace bloch

#endif
