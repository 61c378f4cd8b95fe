#ifndef FGCALC_PARSE_HPP
#define FGCALC_PARSE_HPP

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"

namespace fgcalc {

class ParseError : public Error {
public:
    ParseError(unsigned line, unsigned col, std::vector<std::string> expected, const std::string& got)
        : Error(ErrorCode::ParseError,
                "at " + std::to_string(line) + ":" + std::to_string(col) + ": expected " +
                    join(expected) + ", got " + got),
          line_(line), col_(col), expected_(std::move(expected)) {}

    unsigned line() const { return line_; }
    unsigned col() const { return col_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " | " : "") + v[i];
        return s.empty() ? "nothing" : s;
    }

    unsigned line_, col_;
    std::vector<std::string> expected_;
};

struct Token {
    enum class Kind { Nat, Ident, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    unsigned line = 1, col = 1;
};

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    unsigned line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(c);
            ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::Nat;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
                t.text += src[i];
                advance(src[i]);
                ++i;
            }
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Kind::Ident;
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                t.text += src[i];
                advance(src[i]);
                ++i;
            }
        } else if (std::string_view("+-*^/()[]:;,=").find(c) != std::string_view::npos) {
            t.kind = Token::Kind::Punct;
            t.text = c;
            advance(c);
            ++i;
        } else {
            throw ParseError(line, col, {"token"}, std::string("'") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::Kind::End;
    end.line = line;
    end.col = col;
    end.text = "<end>";
    out.push_back(end);
    return out;
}

// Token cursor shared by the ring, element and series grammars.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek() const { return tokens_[pos_]; }
    const Token& get() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == Token::Kind::End; }

    bool accept_punct(char c) {
        if (peek().kind == Token::Kind::Punct && peek().text[0] == c) {
            get();
            return true;
        }
        return false;
    }

    void expect_punct(char c) {
        if (!accept_punct(c)) fail({std::string("'") + c + "'"});
    }

    unsigned long expect_nat() {
        if (peek().kind != Token::Kind::Nat) fail({"number"});
        return std::stoul(get().text);
    }

    std::string expect_ident() {
        if (peek().kind != Token::Kind::Ident) fail({"identifier"});
        return get().text;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        throw ParseError(t.line, t.col, std::move(expected),
                         t.kind == Token::Kind::End ? "<end>" : "'" + t.text + "'");
    }

    void expect_end() const {
        if (!at_end()) fail({"<end>"});
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// ring := "Z" | "Q" | "Z/" NAT | ring "[" gen ("," gen)* "]"
// gen  := IDENT [":" INT] [";" IDENT "^" NAT]
inline RingPtr parse_ring_tokens(TokenStream& ts) {
    BaseRing base;
    mpz_class modulus = 0;
    std::string head = ts.expect_ident();
    if (head == "Z") {
        if (ts.accept_punct('/')) {
            base = BaseRing::IntegersMod;
            modulus = static_cast<unsigned long>(ts.expect_nat());
        } else {
            base = BaseRing::Integers;
        }
    } else if (head == "Q") {
        base = BaseRing::Rationals;
    } else {
        ts.fail({"'Z'", "'Q'", "'Z/n'"});
    }
    std::vector<Generator> gens;
    while (ts.accept_punct('[')) {
        while (true) {
            Generator g;
            g.name = ts.expect_ident();
            if (ts.accept_punct(':')) {
                bool neg = ts.accept_punct('-');
                g.grade = static_cast<long>(ts.expect_nat());
                if (neg) g.grade = -g.grade;
            }
            if (ts.accept_punct(';')) {
                std::string again = ts.expect_ident();
                if (again != g.name)
                    ts.fail({"relation on '" + g.name + "'"});
                ts.expect_punct('^');
                unsigned long k = ts.expect_nat();
                if (k < 1) ts.fail({"positive power"});
                g.power_relation = static_cast<unsigned>(k);
            }
            gens.push_back(std::move(g));
            if (ts.accept_punct(']')) break;
            ts.expect_punct(',');
        }
    }
    return RingDesc::make(base, modulus, std::move(gens));
}

inline RingPtr parse_ring(const std::string& text) {
    TokenStream ts(tokenize(text));
    RingPtr r = parse_ring_tokens(ts);
    ts.expect_end();
    return r;
}

namespace detail {

// One expression grammar instantiated over ring elements, truncated series
// and Laurent series:
//   expr   := ["+"|"-"] term (("+"|"-") term)*
//   term   := factor ("*" factor)*
//   factor := atom ["^" exponent]
//   atom   := NAT ["/" NAT] | IDENT | "(" expr ")"
// Fractions need a rational base; negative exponents exist only in the
// Laurent grammar and only directly on the series variable.
template <typename Alg>
typename Alg::Value parse_expr(TokenStream& ts, Alg& alg);

template <typename Alg>
typename Alg::Value parse_atom(TokenStream& ts, Alg& alg) {
    if (ts.peek().kind == Token::Kind::Nat) {
        unsigned long num = ts.expect_nat();
        if (ts.peek().kind == Token::Kind::Punct && ts.peek().text[0] == '/') {
            // fraction only when the next token is a number (division of
            // anything else is not in the grammar)
            ts.get();
            unsigned long den = ts.expect_nat();
            return alg.fraction(num, den, ts);
        }
        return alg.natural(num);
    }
    if (ts.peek().kind == Token::Kind::Ident) {
        Token t = ts.peek();
        std::string name = ts.expect_ident();
        return alg.identifier(name, t);
    }
    if (ts.accept_punct('(')) {
        auto v = parse_expr(ts, alg);
        ts.expect_punct(')');
        return v;
    }
    ts.fail({"number", "identifier", "'('"});
}

template <typename Alg>
long parse_exponent(TokenStream& ts) {
    bool neg = false;
    if (ts.accept_punct('(')) {
        neg = ts.accept_punct('-');
        long k = static_cast<long>(ts.expect_nat());
        ts.expect_punct(')');
        return neg ? -k : k;
    }
    neg = ts.accept_punct('-');
    long k = static_cast<long>(ts.expect_nat());
    return neg ? -k : k;
}

template <typename Alg>
typename Alg::Value parse_factor(TokenStream& ts, Alg& alg) {
    Token base_tok = ts.peek();
    auto v = parse_atom(ts, alg);
    if (ts.accept_punct('^')) {
        long k = parse_exponent<Alg>(ts);
        return alg.power(v, k, base_tok, ts);
    }
    return v;
}

template <typename Alg>
typename Alg::Value parse_term(TokenStream& ts, Alg& alg) {
    auto v = parse_factor(ts, alg);
    while (ts.peek().kind == Token::Kind::Punct && ts.peek().text[0] == '*') {
        ts.get();
        v = alg.mul(v, parse_factor(ts, alg));
    }
    return v;
}

template <typename Alg>
typename Alg::Value parse_expr(TokenStream& ts, Alg& alg) {
    bool neg = ts.accept_punct('-');
    if (!neg) ts.accept_punct('+');
    auto v = parse_term(ts, alg);
    if (neg) v = alg.neg(v);
    while (ts.peek().kind == Token::Kind::Punct &&
           (ts.peek().text[0] == '+' || ts.peek().text[0] == '-')) {
        bool minus = ts.get().text[0] == '-';
        auto w = parse_term(ts, alg);
        v = alg.add(v, minus ? alg.neg(w) : w);
    }
    return v;
}

struct ElemAlgebra {
    using Value = RingElem;
    RingPtr ring;

    Value natural(unsigned long n) const { return RingElem::constant(ring, mpq_class(n)); }
    Value fraction(unsigned long num, unsigned long den, TokenStream& ts) const {
        if (ring->base() != BaseRing::Rationals) ts.fail({"fractions only over Q"});
        if (den == 0) ts.fail({"nonzero denominator"});
        return RingElem::constant(ring, mpq_class(num) / mpq_class(den));
    }
    Value identifier(const std::string& name, const Token& t) const {
        if (ring->generator_index(name) < 0)
            throw ParseError(t.line, t.col, {"ring generator"}, "'" + name + "'");
        return RingElem::generator(ring, name);
    }
    Value power(const Value& v, long k, const Token& t, TokenStream& ts) const {
        if (k < 0) ts.fail({"nonnegative exponent"});
        (void)t;
        return v.pow(static_cast<unsigned long>(k));
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
};

struct SeriesAlgebra {
    using Value = TruncSeries;
    RingPtr ring;
    std::vector<std::string> vars;
    unsigned order;

    Value natural(unsigned long n) const {
        return TruncSeries::constant(ring, vars, order, RingElem::constant(ring, mpq_class(n)));
    }
    Value fraction(unsigned long num, unsigned long den, TokenStream& ts) const {
        if (ring->base() != BaseRing::Rationals) ts.fail({"fractions only over Q"});
        if (den == 0) ts.fail({"nonzero denominator"});
        return TruncSeries::constant(ring, vars, order,
                                     RingElem::constant(ring, mpq_class(num) / mpq_class(den)));
    }
    Value identifier(const std::string& name, const Token& t) const {
        for (const auto& v : vars)
            if (v == name) return TruncSeries::variable(ring, vars, order, name);
        if (ring->generator_index(name) >= 0)
            return TruncSeries::constant(ring, vars, order, RingElem::generator(ring, name));
        throw ParseError(t.line, t.col, {"series variable", "ring generator"}, "'" + name + "'");
    }
    Value power(const Value& v, long k, const Token& t, TokenStream& ts) const {
        if (k < 0) ts.fail({"nonnegative exponent (laurent input required for poles)"});
        (void)t;
        return v.pow(static_cast<unsigned>(k));
    }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value neg(const Value& a) const { return -a; }
};

struct LaurentAlgebra {
    using Value = LaurentSeries;
    RingPtr ring;
    std::string var;
    long order;

    Value natural(unsigned long n) const {
        return LaurentSeries::monomial(ring, var, 0, RingElem::constant(ring, mpq_class(n)), order);
    }
    Value fraction(unsigned long num, unsigned long den, TokenStream& ts) const {
        if (ring->base() != BaseRing::Rationals) ts.fail({"fractions only over Q"});
        if (den == 0) ts.fail({"nonzero denominator"});
        return LaurentSeries::monomial(ring, var, 0,
                                       RingElem::constant(ring, mpq_class(num) / mpq_class(den)),
                                       order);
    }
    Value identifier(const std::string& name, const Token& t) const {
        if (name == var)
            return LaurentSeries::monomial(ring, var, 1, RingElem::one(ring), order);
        if (ring->generator_index(name) >= 0)
            return LaurentSeries::monomial(ring, var, 0, RingElem::generator(ring, name), order);
        throw ParseError(t.line, t.col, {"series variable", "ring generator"}, "'" + name + "'");
    }
    Value power(const Value& v, long k, const Token& t, TokenStream& ts) const {
        if (k >= 0) return v.pow(static_cast<unsigned>(k));
        // negative exponents only directly on the variable
        bool is_var = v.terms().size() == 1 && v.terms().begin()->first == 1 &&
                      v.terms().begin()->second == RingElem::one(ring);
        if (!is_var)
            throw ParseError(t.line, t.col, {"negative exponent only on the series variable"},
                             "'^" + std::to_string(k) + "'");
        (void)ts;
        return LaurentSeries::monomial(ring, var, k, RingElem::one(ring), order);
    }
    Value add(const Value& a, const Value& b) const {
        // exact data: keep the declared window
        LaurentSeries r = LaurentSeries::zero(ring, var, std::min(a.lower(), b.lower()), order);
        for (const auto& [k, c] : a.terms()) r.set_term(k, r.coefficient(k) + c);
        for (const auto& [k, c] : b.terms()) r.set_term(k, r.coefficient(k) + c);
        return r;
    }
    Value mul(const Value& a, const Value& b) const {
        LaurentSeries r = LaurentSeries::zero(ring, var, a.lower() + b.lower(), order);
        for (const auto& [ka, ca] : a.terms())
            for (const auto& [kb, cb] : b.terms())
                r.set_term(ka + kb, r.coefficient(ka + kb) + ca * cb);
        return r;
    }
    Value neg(const Value& a) const { return -a; }
};

}  // namespace detail

inline RingElem parse_elem(const std::string& text, const RingPtr& ring) {
    TokenStream ts(tokenize(text));
    detail::ElemAlgebra alg{ring};
    RingElem v = detail::parse_expr(ts, alg);
    ts.expect_end();
    return v;
}

inline TruncSeries parse_series(const std::string& text, const RingPtr& ring,
                                const std::vector<std::string>& vars, unsigned order) {
    TokenStream ts(tokenize(text));
    detail::SeriesAlgebra alg{ring, vars, order};
    TruncSeries v = detail::parse_expr(ts, alg);
    ts.expect_end();
    return v;
}

inline LaurentSeries parse_laurent(const std::string& text, const RingPtr& ring,
                                   const std::string& var, long order) {
    TokenStream ts(tokenize(text));
    detail::LaurentAlgebra alg{ring, var, order};
    LaurentSeries v = detail::parse_expr(ts, alg);
    ts.expect_end();
    return v;
}

}  // namespace fgcalc

#endif
