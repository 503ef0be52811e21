#ifndef BLOCH_EXPR_HPP
#define BLOCH_EXPR_HPP

#include "bloch/field.hpp"

#include <string>

namespace bloch {

struct ParseError : Error {
    size_t position;
    ParseError(const std::string& msg, size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

/// Evaluate an infix field expression over the rationals extended by explicit
/// square roots. Grammar: + - * / with the usual precedence, unary minus,
/// parentheses, integer literals, and the functions add, mul, neg, inv, sqrt
/// (sqrt requires a positive argument and may extend the tower).
TowerElement eval_expression(const std::string& text,
                             int tower_depth_cap = kDefaultTowerDepthCap);

}  // namespace bloch

#endif
