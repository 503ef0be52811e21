#include "bloch/expr.hpp"

#include <cctype>
#include <vector>

namespace bloch {

namespace {

// recursive-descent evaluator; the current tower context is threaded through
// so successive sqrt calls extend one linear chain
struct Parser {
    const std::string& s;
    size_t pos = 0;
    TowerContext ctx;
    int depth_cap;

    explicit Parser(const std::string& text, int cap) : s(text), depth_cap(cap) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }

    TowerElement up(const TowerElement& e) { return e.promote_to(ctx); }

    TowerElement parse_expr() {
        TowerElement v = parse_term();
        while (true) {
            skip_ws();
            if (eat('+'))
                v = up(v) + parse_term();
            else if (eat('-'))
                v = up(v) - parse_term();
            else
                return v;
        }
    }

    TowerElement parse_term() {
        TowerElement v = parse_unary();
        while (true) {
            skip_ws();
            if (eat('*'))
                v = up(v) * parse_unary();
            else if (eat('/')) {
                TowerElement d = parse_unary();
                if (d.is_zero()) throw ParseError("division by zero", pos);
                v = up(v) / d;
            } else
                return v;
        }
    }

    TowerElement parse_unary() {
        skip_ws();
        if (eat('-')) return -parse_unary();
        return parse_primary();
    }

    TowerElement parse_primary() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of expression", pos);
        if (eat('(')) {
            TowerElement v = parse_expr();
            expect(')');
            return v;
        }
        if (std::isdigit((unsigned char)s[pos])) return parse_integer();
        if (std::isalpha((unsigned char)s[pos])) return parse_call();
        throw ParseError(std::string("unexpected character '") + s[pos] + "'", pos);
    }

    TowerElement parse_integer() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        return TowerElement(Rat(Int(s.substr(start, pos - start))), ctx);
    }

    TowerElement parse_call() {
        size_t start = pos;
        while (pos < s.size() && std::isalpha((unsigned char)s[pos])) ++pos;
        std::string name = s.substr(start, pos - start);
        expect('(');
        std::vector<TowerElement> args;
        if (!eat(')')) {
            do {
                args.push_back(parse_expr());
            } while (eat(','));
            expect(')');
        }
        return apply(name, args, start);
    }

    TowerElement apply(const std::string& name, std::vector<TowerElement>& args, size_t at) {
        auto arity = [&](size_t n) {
            if (args.size() != n)
                throw ParseError(name + " expects " + std::to_string(n) + " argument(s)", at);
        };
        if (name == "add" || name == "mul") {
            if (args.empty()) throw ParseError(name + " expects at least one argument", at);
            TowerElement v = args[0];
            for (size_t i = 1; i < args.size(); ++i)
                v = name == "add" ? up(v) + up(args[i]) : up(v) * up(args[i]);
            return v;
        }
        if (name == "neg") {
            arity(1);
            return -args[0];
        }
        if (name == "inv") {
            arity(1);
            if (args[0].is_zero()) throw ParseError("inv of zero", at);
            return args[0].inverse();
        }
        if (name == "sqrt") {
            arity(1);
            if (!is_positive(up(args[0])))
                throw ParseError("sqrt requires a positive argument", at);
            auto r = sqrt_positive(up(args[0]), depth_cap);
            ctx = r.context;
            return r.root;
        }
        throw ParseError("unknown function '" + name + "'", at);
    }
};

}  // namespace

TowerElement eval_expression(const std::string& text, int tower_depth_cap) {
    Parser p(text, tower_depth_cap);
    TowerElement v = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return v.demote();
}

}  // namespace bloch
