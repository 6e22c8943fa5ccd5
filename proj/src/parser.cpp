#include "kstab/polynomial.hpp"

#include <cctype>

namespace kstab {

namespace {

// Recursive-descent parser for the casebook expression grammar.
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nonneg-int)?
//   base   := rational | identifier | '(' expr ')'
//   rational := integer ('/' positive-integer)?
// Whitespace is insignificant.  No implicit multiplication.
class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& vars)
        : text_(text), vars_(vars) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("trailing input");
        return p;
    }

private:
    std::string_view text_;
    const std::vector<std::string>& vars_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError("parse error at offset " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "': " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool eat(char c) {
        if (peek() == c) { ++pos_; return true; }
        return false;
    }

    Polynomial expr() {
        Polynomial p = term();
        while (true) {
            char c = peek();
            if (c == '+') { ++pos_; p += term(); }
            else if (c == '-') { ++pos_; p -= term(); }
            else break;
        }
        return p;
    }

    Polynomial term() {
        Polynomial p = factor();
        while (eat('*')) p *= factor();
        return p;
    }

    Polynomial factor() {
        Polynomial p = base();
        if (eat('^')) {
            skip_ws();
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected nonnegative integer exponent");
            unsigned long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + static_cast<unsigned long>(text_[pos_] - '0');
                if (e > 1000000) fail("exponent too large");
                ++pos_;
            }
            p = p.pow(static_cast<unsigned>(e));
        }
        return p;
    }

    Polynomial base() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail("expected rational, identifier or '('");
    }

    Polynomial rational_literal() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected digits in rational literal");
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected digits after '/'");
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        Rational q = parse_rational(text_.substr(start, pos_ - start));
        return Polynomial::constant(vars_, q);
    }

    Polynomial identifier() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        for (const auto& v : vars_)
            if (v == name) return Polynomial::variable(vars_, name);
        fail("unknown identifier '" + name + "'");
    }
};

} // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
    return Parser(text, vars).run();
}

} // namespace kstab
