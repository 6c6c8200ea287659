#pragma once

/**
 * @file parser.hpp
 * @brief Expression and ring-description parsing for the command line.
 *
 * Expression grammar:
 *   expr   := term (('+' | '-') term)*
 *   term   := unary ('*' unary)*
 *   unary  := '-' unary | power
 *   power  := atom ('^' INT)?
 *   atom   := INT ('/' INT)? | IDENT | call | '(' expr ')'
 *   call   := 'g_' INT '(' expr ')' | 'd' ('^' INT)? '(' expr ')' | 'phi' ('^' INT)? '(' expr ')'
 * A name only acts as a function when immediately followed by '(' (or '^k('),
 * so a generator may itself be called d.
 *
 * Ring descriptions: "F2[x,y]<y1,y2>", "Q[x]", "Z(3)[d,z]": coefficients,
 * ordinary variables in brackets, divided variables in angle brackets.
 */

#include <cctype>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gammadelta/deltaring.hpp"
#include "gammadelta/dpalg.hpp"

namespace gammadelta {

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t column)
        : Error("parse error at column " + std::to_string(column + 1) + ": " + what), column_(column) {}
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

struct Expr {
    enum class Kind { number, variable, add, sub, mul, neg, pow, gamma, delta, phi };
    Kind kind;
    Rational value;       // number
    std::string name;     // variable
    unsigned count = 0;   // exponent, gamma index, delta/phi iterations
    std::vector<std::shared_ptr<const Expr>> args;
    std::size_t column = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    static ExprPtr node(Expr::Kind k, std::size_t col, std::vector<ExprPtr> args, unsigned count = 0) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->column = col;
        e->args = std::move(args);
        e->count = count;
        return e;
    }

    unsigned integer() {
        skip();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw ParseError("expected an integer", pos_);
        if (pos_ - start > 6) throw ParseError("integer too large", start);
        return static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (true) {
            skip();
            if (peek('+') || peek('-')) {
                const std::size_t col = pos_;
                const char op = s_[pos_++];
                ExprPtr rhs = term();
                lhs = node(op == '+' ? Expr::Kind::add : Expr::Kind::sub, col, {lhs, rhs});
            } else {
                return lhs;
            }
        }
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        while (peek('*')) {
            const std::size_t col = pos_++;
            lhs = node(Expr::Kind::mul, col, {lhs, unary()});
        }
        return lhs;
    }

    ExprPtr unary() {
        if (peek('-')) {
            const std::size_t col = pos_++;
            return node(Expr::Kind::neg, col, {unary()});
        }
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (peek('^')) {
            const std::size_t col = pos_++;
            return node(Expr::Kind::pow, col, {base}, integer());
        }
        return base;
    }

    /// At an identifier: is it applied as a function ("name(" or "name^k(")?
    bool call_follows(std::size_t after, unsigned& iterations, std::size_t& open) const {
        std::size_t q = after;
        while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
        iterations = 1;
        if (q < s_.size() && s_[q] == '^') {
            std::size_t r = q + 1;
            while (r < s_.size() && std::isspace(static_cast<unsigned char>(s_[r]))) ++r;
            const std::size_t digits = r;
            while (r < s_.size() && std::isdigit(static_cast<unsigned char>(s_[r]))) ++r;
            if (r == digits || r - digits > 6) return false;
            const unsigned k = static_cast<unsigned>(std::stoul(s_.substr(digits, r - digits)));
            while (r < s_.size() && std::isspace(static_cast<unsigned char>(s_[r]))) ++r;
            if (r < s_.size() && s_[r] == '(') {
                iterations = k;
                open = r;
                return true;
            }
            return false;
        }
        if (q < s_.size() && s_[q] == '(') {
            open = q;
            return true;
        }
        return false;
    }

    ExprPtr atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        const std::size_t col = pos_;
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string lit = s_.substr(start, pos_ - start);
            if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size() &&
                std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                const std::size_t dstart = pos_;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                lit += "/" + s_.substr(dstart, pos_ - dstart);
            }
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::number;
            e->column = col;
            try {
                e->value = parse_rational(lit);
            } catch (const std::exception&) {
                throw ParseError("bad number '" + lit + "'", col);
            }
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string name = s_.substr(start, pos_ - start);
            unsigned iterations = 1;
            std::size_t open = 0;
            if (name.size() > 2 && name.rfind("g_", 0) == 0 &&
                std::all_of(name.begin() + 2, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) &&
                peek('(')) {
                if (name.size() - 2 > 6) throw ParseError("divided-power index too large", start);
                const unsigned n = static_cast<unsigned>(std::stoul(name.substr(2)));
                ++pos_;
                ExprPtr arg = expr();
                expect(')');
                return node(Expr::Kind::gamma, col, {arg}, n);
            }
            if ((name == "d" || name == "phi") && call_follows(pos_, iterations, open)) {
                pos_ = open + 1;
                ExprPtr arg = expr();
                expect(')');
                return node(name == "d" ? Expr::Kind::delta : Expr::Kind::phi, col, {arg}, iterations);
            }
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::variable;
            e->name = name;
            e->column = col;
            return e;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expression(const std::string& text) { return detail::ExprParser(text).parse(); }

/// Variable names in order of first appearance.
inline void collect_variables(const Expr& e, std::vector<std::string>& out) {
    if (e.kind == Expr::Kind::variable && std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
    for (const auto& a : e.args) collect_variables(*a, out);
}

/// Evaluates into Gamma_{R[X]}(Y); a divided variable y denotes gamma_1(y).
template <class K>
DPElement<K> evaluate_pd(const Expr& e, const PDContextPtr& ctx) {
    const auto& dom = ctx->domain();
    switch (e.kind) {
        case Expr::Kind::number:
            return DPElement<K>::constant(ctx, scalar_from<K>(e.value, dom));
        case Expr::Kind::variable: {
            if (const int i = ctx->ordinary_index(e.name); i >= 0) return DPElement<K>::ordinary(ctx, static_cast<std::size_t>(i));
            if (const int j = ctx->divided_index(e.name); j >= 0) return DPElement<K>::divided(ctx, static_cast<std::size_t>(j), 1);
            throw ParseError("unknown variable '" + e.name + "'", e.column);
        }
        case Expr::Kind::add: return evaluate_pd<K>(*e.args[0], ctx) + evaluate_pd<K>(*e.args[1], ctx);
        case Expr::Kind::sub: return evaluate_pd<K>(*e.args[0], ctx) - evaluate_pd<K>(*e.args[1], ctx);
        case Expr::Kind::mul: return evaluate_pd<K>(*e.args[0], ctx) * evaluate_pd<K>(*e.args[1], ctx);
        case Expr::Kind::neg: return -evaluate_pd<K>(*e.args[0], ctx);
        case Expr::Kind::pow: return evaluate_pd<K>(*e.args[0], ctx).pow(e.count);
        case Expr::Kind::gamma: return divided_power(e.count, evaluate_pd<K>(*e.args[0], ctx));
        case Expr::Kind::delta:
        case Expr::Kind::phi:
            throw ParseError("d(...) and phi(...) need a delta-ring", e.column);
    }
    throw ParseError("unhandled expression", e.column);
}

/// Evaluates into a free delta-ring; generators are looked up by name.
inline DeltaElement evaluate_delta(const Expr& e, const DeltaContextPtr& ctx) {
    switch (e.kind) {
        case Expr::Kind::number: return DeltaElement::constant(ctx, e.value);
        case Expr::Kind::variable: {
            if (ctx->generator_index(e.name) < 0) throw ParseError("unknown generator '" + e.name + "'", e.column);
            return DeltaElement::tower(ctx, e.name);
        }
        case Expr::Kind::add: return evaluate_delta(*e.args[0], ctx) + evaluate_delta(*e.args[1], ctx);
        case Expr::Kind::sub: return evaluate_delta(*e.args[0], ctx) - evaluate_delta(*e.args[1], ctx);
        case Expr::Kind::mul: return evaluate_delta(*e.args[0], ctx) * evaluate_delta(*e.args[1], ctx);
        case Expr::Kind::neg: return DeltaElement(ctx) - evaluate_delta(*e.args[0], ctx);
        case Expr::Kind::pow: return evaluate_delta(*e.args[0], ctx).pow(e.count);
        case Expr::Kind::delta: return delta_n(evaluate_delta(*e.args[0], ctx), e.count);
        case Expr::Kind::phi: return frobenius_n(evaluate_delta(*e.args[0], ctx), e.count);
        case Expr::Kind::gamma: throw ParseError("g_n(...) needs a divided-power ring", e.column);
    }
    throw ParseError("unhandled expression", e.column);
}

struct RingShape {
    CoeffDomain domain;
    std::vector<std::string> ordinary;
    std::vector<std::string> divided;
};

/// Parses "F2[x]<y>", "Q[x,y]", "Z(3)[x]"; a missing prime falls back to default_p.
inline RingShape parse_ring(const std::string& text, long default_p) {
    std::size_t pos = 0;
    auto fail = [&](const std::string& what) -> RingShape { throw ParseError(what, pos); };
    auto number = [&]() {
        const std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) return default_p;
        if (pos - start > 6) throw ParseError("prime too large", start);
        return std::stol(text.substr(start, pos - start));
    };
    RingShape shape{CoeffDomain::rational(), {}, {}};
    if (text.rfind("F", 0) == 0) {
        pos = 1;
        shape.domain = CoeffDomain::prime_field(PrimeContext(number()));
    } else if (text.rfind("Q", 0) == 0) {
        pos = 1;
    } else if (text.rfind("Z(", 0) == 0) {
        pos = 2;
        const long p = number();
        if (pos >= text.size() || text[pos] != ')') return fail("expected ')'");
        ++pos;
        shape.domain = CoeffDomain::p_local(PrimeContext(p));
    } else {
        return fail("ring must start with F<p>, Q or Z(<p>)");
    }
    auto names = [&](char open, char close, std::vector<std::string>& out) {
        if (pos >= text.size() || text[pos] != open) return;
        ++pos;
        std::string cur;
        while (pos < text.size() && text[pos] != close) {
            const char c = text[pos];
            if (c == ',') {
                if (cur.empty()) throw ParseError("empty variable name", pos);
                out.push_back(cur);
                cur.clear();
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                cur += c;
            } else if (!std::isspace(static_cast<unsigned char>(c))) {
                throw ParseError(std::string("unexpected '") + c + "' in ring", pos);
            }
            ++pos;
        }
        if (pos >= text.size()) throw ParseError(std::string("expected '") + close + "'", pos);
        if (!cur.empty()) out.push_back(cur);
        ++pos;
    };
    names('[', ']', shape.ordinary);
    names('<', '>', shape.divided);
    if (pos != text.size()) return fail("trailing characters in ring");
    return shape;
}

}  // namespace gammadelta
