#include "core/parser.hpp"

#include <cctype>

#include "core/errors.hpp"
#include "core/fp_util.hpp"

namespace dlops {

namespace {

enum class Tok { Int, Ident, GAtom, Bockstein, QOp, Star, Plus, Minus, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    long long value = 0;   // Int, QOp
    std::string text;      // Ident, GAtom name
    long long ann = -1;    // GAtom degree annotation
    size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        tok_ = Token{Tok::End, 0, "", -1, i_};
        if (i_ >= s_.size()) return;
        const size_t start = i_;
        const char c = s_[i_];
        auto make = [&](Tok k) {
            ++i_;
            tok_ = Token{k, 0, "", -1, start};
        };
        if (c == '*') return make(Tok::Star);
        if (c == '+') return make(Tok::Plus);
        if (c == '-') return make(Tok::Minus);
        if (c == '^') return make(Tok::Caret);
        if (c == '(') return make(Tok::LParen);
        if (c == ')') return make(Tok::RParen);
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long long v = 0;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                v = v * 10 + (s_[i_] - '0');
                if (v > (1LL << 40)) throw ParseError("integer literal too large", start);
                ++i_;
            }
            tok_ = Token{Tok::Int, v, "", -1, start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
            std::string word = s_.substr(i_, j - i_);
            if (word == "b") {
                i_ = j;
                tok_ = Token{Tok::Bockstein, 0, "", -1, start};
                return;
            }
            if (word == "Q") {
                if (j >= s_.size() || s_[j] != '^')
                    throw ParseError("expected ^ after Q", j);
                ++j;
                if (j >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[j])))
                    throw ParseError("expected integer after Q^", j);
                long long v = 0;
                while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
                    v = v * 10 + (s_[j] - '0');
                    if (v > (1LL << 40)) throw ParseError("operation index too large", start);
                    ++j;
                }
                i_ = j;
                tok_ = Token{Tok::QOp, v, "", -1, start};
                return;
            }
            // Q followed directly by digits is a mistyped operation.
            if (word.size() > 1 && word[0] == 'Q' &&
                std::isdigit(static_cast<unsigned char>(word[1])))
                throw ParseError("expected ^ after Q", start + 1);
            // Explicit-degree atom g<name>@<degree>.
            if (word.size() > 1 && word[0] == 'g' && j < s_.size() && s_[j] == '@') {
                size_t k = j + 1;
                if (k >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[k])))
                    throw ParseError("expected degree after @", k);
                long long v = 0;
                while (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
                    v = v * 10 + (s_[k] - '0');
                    if (v > (1LL << 40)) throw ParseError("degree annotation too large", k);
                    ++k;
                }
                i_ = k;
                tok_ = Token{Tok::GAtom, 0, word.substr(1), v, start};
                return;
            }
            i_ = j;
            tok_ = Token{Tok::Ident, 0, word, -1, start};
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }

    const std::string& s_;
    size_t i_ = 0;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    AstExpr parse() {
        AstExpr e = expr();
        if (lex_.peek().kind != Tok::End)
            throw ParseError("unexpected trailing input", lex_.peek().pos);
        return e;
    }

  private:
    AstExpr expr() {
        AstExpr out;
        int sign = 1;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.next();
            sign = -1;
        }
        out.terms.push_back(term(sign));
        while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
            int s = lex_.next().kind == Tok::Plus ? 1 : -1;
            out.terms.push_back(term(s));
        }
        return out;
    }

    AstTerm term(int sign) {
        AstTerm t;
        t.coeff = sign;
        if (lex_.peek().kind == Tok::Int) {
            t.coeff = static_cast<int>(sign * lex_.next().value);
            if (!starts_factor(lex_.peek().kind)) return t; // bare integer
        }
        t.factors.push_back(factor());
        while (lex_.peek().kind == Tok::Star) {
            lex_.next();
            t.factors.push_back(factor());
        }
        return t;
    }

    static bool starts_factor(Tok k) {
        return k == Tok::Ident || k == Tok::GAtom || k == Tok::Bockstein ||
               k == Tok::QOp || k == Tok::LParen;
    }

    AstFactor factor() {
        AstFactor f;
        f.pos = lex_.peek().pos;
        while (lex_.peek().kind == Tok::Bockstein || lex_.peek().kind == Tok::QOp) {
            Token t = lex_.next();
            if (t.kind == Tok::Bockstein) {
                if (lex_.peek().kind != Tok::QOp)
                    throw ParseError("b must precede Q^", t.pos);
                Token q = lex_.next();
                f.ops.push_back({1, static_cast<int>(q.value)});
            } else {
                f.ops.push_back({0, static_cast<int>(t.value)});
            }
        }
        Token t = lex_.peek();
        if (t.kind == Tok::Ident) {
            lex_.next();
            f.base = AstAtom{t.text, std::nullopt, t.pos};
        } else if (t.kind == Tok::GAtom) {
            lex_.next();
            f.base = AstAtom{t.text, static_cast<int>(t.ann), t.pos};
        } else if (t.kind == Tok::Int && t.value == 1) {
            // The literal unit, e.g. "Q^3 1".
            lex_.next();
            f.base = AstAtom{"1", std::nullopt, t.pos};
        } else if (t.kind == Tok::LParen) {
            lex_.next();
            auto sub = std::make_shared<AstExpr>(expr());
            if (lex_.peek().kind != Tok::RParen)
                throw ParseError("expected )", lex_.peek().pos);
            lex_.next();
            f.base = sub;
        } else {
            throw ParseError("expected an atom or (", t.pos);
        }
        if (lex_.peek().kind == Tok::Caret) {
            lex_.next();
            Token e = lex_.peek();
            if (e.kind != Tok::Int) throw ParseError("expected integer exponent", e.pos);
            lex_.next();
            if (e.value < 0 || e.value > 0xFFFF) throw ParseError("exponent out of range", e.pos);
            f.exponent = static_cast<unsigned>(e.value);
        }
        return f;
    }

    Lexer lex_;
};

} // namespace

AstExpr parse_expr(const std::string& text) { return Parser(text).parse(); }

namespace {

OpPolynomial bind_expr(const AstExpr& ast, const SymbolTable& symbols);

OpPolynomial bind_factor(const AstFactor& f, const SymbolTable& symbols) {
    const int p = symbols.p;
    OpPolynomial base(p);
    if (std::holds_alternative<AstAtom>(f.base)) {
        const auto& atom = std::get<AstAtom>(f.base);
        if (atom.name == "1") {
            base = OpPolynomial::term(p, OpTerm{1, {}});
        } else {
            auto it = symbols.degrees.find(atom.name);
            if (it == symbols.degrees.end())
                throw DomainError("unknown generator " + atom.name);
            if (atom.ann_degree && *atom.ann_degree != it->second)
                throw DomainError("degree annotation mismatch for " + atom.name +
                                  ": declared " + std::to_string(it->second) +
                                  ", written " + std::to_string(*atom.ann_degree));
            base = OpPolynomial::word(p, OpWord{OpSeq{}, Atom{atom.name, it->second}});
        }
    } else {
        base = bind_expr(*std::get<std::shared_ptr<AstExpr>>(f.base), symbols);
    }
    OpPolynomial powered = OpPolynomial::term(p, OpTerm{1, {}});
    for (unsigned i = 0; i < f.exponent; ++i) powered = powered * base;
    // Apply operation factors innermost-last: the written order is outermost
    // first, so walk them right to left over the formal value.
    for (auto it = f.ops.rbegin(); it != f.ops.rend(); ++it) {
        if (p == 2 && it->eps) throw DomainError("Bockstein factor at p = 2");
        OpPolynomial next(p);
        for (const auto& t : powered.terms())
            next = next + apply_op_to_factors(p, *it, t.factors).scaled(t.coeff);
        powered = next;
    }
    return powered;
}

OpPolynomial bind_expr(const AstExpr& ast, const SymbolTable& symbols) {
    const int p = symbols.p;
    OpPolynomial out(p);
    for (const auto& t : ast.terms) {
        OpPolynomial prod = OpPolynomial::term(p, OpTerm{t.coeff, {}});
        for (const auto& f : t.factors) prod = prod * bind_factor(f, symbols);
        out = out + prod;
    }
    return out;
}

} // namespace

OpPolynomial bind_formal(const AstExpr& ast, const SymbolTable& symbols) {
    return bind_expr(ast, symbols);
}

namespace {

AlgElement eval_factor(const AstFactor& f, const EvalContext& ctx) {
    AlgElement base;
    if (std::holds_alternative<AstAtom>(f.base)) {
        const auto& atom = std::get<AstAtom>(f.base);
        if (atom.name == "1")
            base = AlgElement::unit(ctx.algebra());
        else
            base = ctx.resolve_atom(atom.name, atom.ann_degree);
    } else {
        base = eval_ast(*std::get<std::shared_ptr<AstExpr>>(f.base), ctx);
    }
    AlgElement powered = base.pow(f.exponent);
    if (f.ops.empty()) return powered;
    return ctx.apply_ops(OpSeq{f.ops}, powered);
}

} // namespace

AlgElement eval_ast(const AstExpr& ast, const EvalContext& ctx) {
    AlgElement out = AlgElement::zero(ctx.algebra());
    for (const auto& t : ast.terms) {
        AlgElement prod = AlgElement::unit(ctx.algebra(), t.coeff);
        for (const auto& f : t.factors) prod = prod * eval_factor(f, ctx);
        out = out + prod;
    }
    return ctx.post_reduce(out);
}

AlgElement eval_expression(const std::string& text, const EvalContext& ctx) {
    return eval_ast(parse_expr(text), ctx);
}

std::string render_element(const AlgElement& x) { return x.str(); }

} // namespace dlops
