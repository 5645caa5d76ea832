#include "qlm/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace qlm::dsl {

namespace {

struct Token {
    enum class Type { Number, Ident, Op, LParen, RParen, End };
    Type type;
    double number = 0.0;
    std::string text;
    char op = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            bump(src_[pos_]);
            ++pos_;
        }
        tok_ = Token{};
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= src_.size()) {
            tok_.type = Token::Type::End;
            return;
        }
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            char* end = nullptr;
            tok_.number = std::strtod(begin, &end);
            if (end == begin) throw ParseError("malformed number", line_, col_);
            tok_.type = Token::Type::Number;
            while (src_.data() + pos_ < end) {
                bump(src_[pos_]);
                ++pos_;
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                bump(src_[pos_]);
                ++pos_;
            }
            tok_.type = Token::Type::Ident;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        bump(c);
        ++pos_;
        switch (c) {
        case '+':
        case '-':
        case '*':
        case '/':
        case '^':
            tok_.type = Token::Type::Op;
            tok_.op = c;
            return;
        case '(':
            tok_.type = Token::Type::LParen;
            return;
        case ')':
            tok_.type = Token::Type::RParen;
            return;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", tok_.line, tok_.column);
        }
    }

    void bump(char c) {
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

bool known_function(const std::string& name) {
    return name == "sqrt" || name == "sin" || name == "cos" || name == "sinh" ||
           name == "cosh" || name == "asinh" || name == "exp" || name == "log" || name == "abs";
}

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) {}

    ExprPtr parse() {
        ExprPtr e = additive();
        const Token& t = lex_.peek();
        if (t.type != Token::Type::End)
            throw ParseError("trailing input after expression", t.line, t.column);
        return e;
    }

  private:
    // additive := multiplicative (('+'|'-') multiplicative)*
    ExprPtr additive() {
        ExprPtr e = multiplicative();
        while (lex_.peek().type == Token::Type::Op &&
               (lex_.peek().op == '+' || lex_.peek().op == '-')) {
            Token t = lex_.take();
            last_ = t;
            e = binary(t.op, e, multiplicative());
        }
        return e;
    }

    // multiplicative := unary (('*'|'/') unary)*
    ExprPtr multiplicative() {
        ExprPtr e = unary();
        while (lex_.peek().type == Token::Type::Op &&
               (lex_.peek().op == '*' || lex_.peek().op == '/')) {
            Token t = lex_.take();
            last_ = t;
            e = binary(t.op, e, unary());
        }
        return e;
    }

    // unary := '-' unary | power         (so ^ binds tighter than unary -)
    ExprPtr unary() {
        if (lex_.peek().type == Token::Type::Op && lex_.peek().op == '-') {
            Token t = lex_.take();
            last_ = t;
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Unary;
            node->op = '-';
            node->lhs = unary();
            return node;
        }
        return power();
    }

    // power := atom ('^' unary)?        (right associative; -x allowed in exponent)
    ExprPtr power() {
        ExprPtr base = atom();
        if (lex_.peek().type == Token::Type::Op && lex_.peek().op == '^') {
            Token t = lex_.take();
            last_ = t;
            return binary('^', base, unary());
        }
        return base;
    }

    ExprPtr atom() {
        const Token& p = lex_.peek();
        if (p.type == Token::Type::Number) {
            Token t = lex_.take();
            last_ = t;
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Number;
            node->number = t.number;
            return node;
        }
        if (p.type == Token::Type::Ident) {
            Token t = lex_.take();
            last_ = t;
            if (lex_.peek().type == Token::Type::LParen) {
                if (!known_function(t.text))
                    throw ParseError("unknown function '" + t.text + "'", t.line, t.column);
                last_ = lex_.take(); // '('
                ExprPtr arg = additive();
                expect_rparen();
                auto node = std::make_shared<Expr>();
                node->kind = Expr::Kind::Call;
                node->name = t.text;
                node->lhs = arg;
                return node;
            }
            auto node = std::make_shared<Expr>();
            node->kind = Expr::Kind::Variable;
            node->name = t.text;
            return node;
        }
        if (p.type == Token::Type::LParen) {
            last_ = lex_.take();
            ExprPtr e = additive();
            expect_rparen();
            return e;
        }
        // missing operand: point at the token that broke the parse, or at the
        // last consumed token when the input just stops
        if (p.type == Token::Type::End)
            throw ParseError("expected operand before end of input", last_.line, last_.column);
        throw ParseError("expected operand", p.line, p.column);
    }

    void expect_rparen() {
        const Token& t = lex_.peek();
        if (t.type != Token::Type::RParen) {
            if (t.type == Token::Type::End)
                throw ParseError("missing ')'", last_.line, last_.column);
            throw ParseError("expected ')'", t.line, t.column);
        }
        last_ = lex_.take();
    }

    ExprPtr binary(char op, ExprPtr l, ExprPtr r) {
        auto node = std::make_shared<Expr>();
        node->kind = Expr::Kind::Binary;
        node->op = op;
        node->lhs = std::move(l);
        node->rhs = std::move(r);
        return node;
    }

    Lexer lex_;
    Token last_; // last consumed token, for end-of-input error positions
};

} // namespace

ExprPtr parse_expression(std::string_view src) { return Parser(src).parse(); }

double eval_expr(const Expr& e, const std::map<std::string, double>& bindings) {
    switch (e.kind) {
    case Expr::Kind::Number:
        return e.number;
    case Expr::Kind::Variable: {
        auto it = bindings.find(e.name);
        if (it == bindings.end()) throw DomainError("unbound variable '" + e.name + "'");
        return it->second;
    }
    case Expr::Kind::Unary:
        return -eval_expr(*e.lhs, bindings);
    case Expr::Kind::Binary: {
        const double a = eval_expr(*e.lhs, bindings);
        const double b = eval_expr(*e.rhs, bindings);
        switch (e.op) {
        case '+':
            return a + b;
        case '-':
            return a - b;
        case '*':
            return a * b;
        case '/':
            return a / b;
        case '^':
            return std::pow(a, b);
        }
        throw DomainError("bad operator");
    }
    case Expr::Kind::Call: {
        const double a = eval_expr(*e.lhs, bindings);
        if (e.name == "sqrt") {
            if (a < 0) throw DomainError("sqrt of negative value");
            return std::sqrt(a);
        }
        if (e.name == "sin") return std::sin(a);
        if (e.name == "cos") return std::cos(a);
        if (e.name == "sinh") return std::sinh(a);
        if (e.name == "cosh") return std::cosh(a);
        if (e.name == "asinh") return std::asinh(a);
        if (e.name == "exp") return std::exp(a);
        if (e.name == "log") {
            if (a <= 0) throw DomainError("log of non-positive value");
            return std::log(a);
        }
        if (e.name == "abs") return std::abs(a);
        throw DomainError("unknown function '" + e.name + "'");
    }
    }
    throw DomainError("corrupt expression node");
}

namespace {

void print(const Expr& e, std::string& out) {
    switch (e.kind) {
    case Expr::Kind::Number: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", e.number);
        out += buf;
        return;
    }
    case Expr::Kind::Variable:
        out += e.name;
        return;
    case Expr::Kind::Unary:
        out += "(-";
        print(*e.lhs, out);
        out += ")";
        return;
    case Expr::Kind::Binary:
        out += "(";
        print(*e.lhs, out);
        out += " ";
        out += e.op;
        out += " ";
        print(*e.rhs, out);
        out += ")";
        return;
    case Expr::Kind::Call:
        out += e.name;
        out += "(";
        print(*e.lhs, out);
        out += ")";
        return;
    }
}

} // namespace

std::string to_string(const Expr& e) {
    std::string out;
    print(e, out);
    return out;
}

} // namespace qlm::dsl
