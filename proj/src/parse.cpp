#include "varcert/parse.hpp"

#include <cctype>

namespace varcert {

namespace {

struct Lexer {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

class PolyParser {
  public:
    PolyParser(std::string_view text, const std::vector<std::string>& vars)
        : lex_{text}, vars_(vars) {}

    Polynomial parse() {
        Polynomial p = expr();
        if (!lex_.done()) throw ParseError(lex_.pos, "unexpected trailing input");
        return p;
    }

  private:
    Lexer lex_;
    const std::vector<std::string>& vars_;

    Polynomial expr() {
        bool neg = false;
        if (lex_.accept('-'))
            neg = true;
        else
            lex_.accept('+');
        Polynomial p = product();
        if (neg) p = -p;
        while (true) {
            if (lex_.accept('+')) {
                p = p + product();
            } else if (lex_.accept('-')) {
                p = p - product();
            } else {
                break;
            }
        }
        return p;
    }

    Polynomial product() {
        Polynomial p = factor();
        while (true) {
            if (lex_.accept('*')) {
                p = p * factor();
                continue;
            }
            char c = lex_.peek();
            // implicit multiplication: "2x", "x y", "3(x+1)"
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '(' ||
                std::isdigit(static_cast<unsigned char>(c))) {
                p = p * factor();
                continue;
            }
            break;
        }
        return p;
    }

    Polynomial factor() {
        char c = lex_.peek();
        Polynomial base(vars_.size());
        if (c == '(') {
            lex_.accept('(');
            base = expr();
            if (!lex_.accept(')')) throw ParseError(lex_.pos, "expected ')'");
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            base = Polynomial::constant(vars_.size(), number());
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            base = var();
        } else {
            throw ParseError(lex_.pos, "expected a coefficient, variable or '('");
        }
        if (lex_.accept('^')) {
            size_t at = lex_.pos;
            if (!std::isdigit(static_cast<unsigned char>(lex_.peek())))
                throw ParseError(at, "expected a nonnegative integer exponent");
            unsigned e = 0;
            while (lex_.pos < lex_.s.size() &&
                   std::isdigit(static_cast<unsigned char>(lex_.s[lex_.pos]))) {
                e = e * 10 + static_cast<unsigned>(lex_.s[lex_.pos] - '0');
                if (e > 10000) throw ParseError(at, "exponent too large");
                ++lex_.pos;
            }
            base = base.pow(e);
        }
        return base;
    }

    Rational number() {
        size_t start = lex_.pos;
        while (lex_.pos < lex_.s.size() &&
               (std::isdigit(static_cast<unsigned char>(lex_.s[lex_.pos])) ||
                lex_.s[lex_.pos] == '.'))
            ++lex_.pos;
        std::string digits(lex_.s.substr(start, lex_.pos - start));
        // "3/4": the slash binds to the literal only when followed by a digit
        if (lex_.pos < lex_.s.size() && lex_.s[lex_.pos] == '/' &&
            lex_.pos + 1 < lex_.s.size() &&
            std::isdigit(static_cast<unsigned char>(lex_.s[lex_.pos + 1]))) {
            ++lex_.pos;
            size_t dstart = lex_.pos;
            while (lex_.pos < lex_.s.size() &&
                   std::isdigit(static_cast<unsigned char>(lex_.s[lex_.pos])))
                ++lex_.pos;
            digits += "/" + std::string(lex_.s.substr(dstart, lex_.pos - dstart));
        }
        auto q = rat_from_string(digits);
        if (!q) throw ParseError(start, "bad numeric literal '" + digits + "'");
        return *q;
    }

    Polynomial var() {
        size_t start = lex_.pos;
        while (lex_.pos < lex_.s.size() &&
               (std::isalnum(static_cast<unsigned char>(lex_.s[lex_.pos])) ||
                lex_.s[lex_.pos] == '_'))
            ++lex_.pos;
        std::string name(lex_.s.substr(start, lex_.pos - start));
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
        }
        throw ParseError(start, "unknown variable '" + name + "'");
    }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& vars) {
    return PolyParser(text, vars).parse();
}

std::vector<Rational> parse_point(std::string_view text) {
    std::vector<Rational> out;
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) ||
                                   text[i] == '(' || text[i] == ')' || text[i] == ','))
            ++i;
    };
    skip();
    while (i < text.size()) {
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
               text[i] != ',' && text[i] != '(' && text[i] != ')')
            ++i;
        auto q = rat_from_string(text.substr(start, i - start));
        if (!q)
            throw ParseError(start, "bad coordinate '" +
                                        std::string(text.substr(start, i - start)) + "'");
        out.push_back(*q);
        skip();
    }
    return out;
}

}  // namespace varcert
