// Copyright 2026 The eigenmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <vector>

#include "eigenmark/error.hpp"
#include "eigenmark/logic.hpp"

namespace eigenmark::logic {

namespace {

enum class Tok { Symbol, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
    Tok kind = Tok::End;
    std::size_t offset = 0;
    std::string text;
};

constexpr std::size_t kMaxNesting = 512;

bool is_alpha(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
}

bool is_symbol_char(char c) {
    return is_alpha(c) || (c >= '0' && c <= '9') || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
    // UTF-8 encodings of the alternate connectives.
    static constexpr std::pair<std::string_view, Tok> kUnicode[] = {
        {"\xC2\xAC", Tok::Not},         // ¬
        {"\xE2\x88\xA7", Tok::And},     // ∧
        {"\xE2\x88\xA8", Tok::Or},      // ∨
        {"\xE2\x86\x92", Tok::Implies}, // →
        {"\xE2\x86\x94", Tok::Iff},     // ↔
    };
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        const std::string_view rest = text.substr(i);
        Token t{Tok::End, i, {}};
        std::size_t len = 1;
        if (is_alpha(c)) {
            while (len < rest.size() && is_symbol_char(rest[len])) {
                ++len;
            }
            t.kind = Tok::Symbol;
            t.text = std::string(rest.substr(0, len));
        } else if (c == '~') {
            t.kind = Tok::Not;
        } else if (c == '&') {
            t.kind = Tok::And;
        } else if (c == '|') {
            t.kind = Tok::Or;
        } else if (c == '(') {
            t.kind = Tok::LParen;
        } else if (c == ')') {
            t.kind = Tok::RParen;
        } else if (rest.starts_with("->")) {
            t.kind = Tok::Implies;
            len = 2;
        } else if (rest.starts_with("<->")) {
            t.kind = Tok::Iff;
            len = 3;
        } else {
            bool matched = false;
            for (const auto &[spelling, kind] : kUnicode) {
                if (rest.starts_with(spelling)) {
                    t.kind = kind;
                    len = spelling.size();
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                throw ParseError(i, "unknown token");
            }
        }
        out.push_back(std::move(t));
        i += len;
    }
    out.push_back({Tok::End, text.size(), {}});
    return out;
}

class Parser {
  public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Formula parse_all() {
        if (peek().kind == Tok::End) {
            throw ParseError(peek().offset, "empty formula");
        }
        Formula f = iff();
        if (peek().kind == Tok::RParen) {
            throw ParseError(peek().offset, "unbalanced parenthesis");
        }
        if (peek().kind != Tok::End) {
            throw ParseError(peek().offset, "trailing input");
        }
        return f;
    }

  private:
    const Token &peek() const { return tokens_[pos_]; }
    const Token &next() { return tokens_[pos_++]; }

    Formula iff() {
        Formula lhs = implies();
        if (peek().kind == Tok::Iff) {
            next();
            return biconditional(std::move(lhs), iff());
        }
        return lhs;
    }

    Formula implies() {
        Formula lhs = disjunction_chain();
        if (peek().kind == Tok::Implies) {
            next();
            return implication(std::move(lhs), implies());
        }
        return lhs;
    }

    Formula disjunction_chain() {
        Formula lhs = conjunction_chain();
        while (peek().kind == Tok::Or) {
            next();
            lhs = disjunction(std::move(lhs), conjunction_chain());
        }
        return lhs;
    }

    Formula conjunction_chain() {
        Formula lhs = unary();
        while (peek().kind == Tok::And) {
            next();
            lhs = conjunction(std::move(lhs), unary());
        }
        return lhs;
    }

    Formula unary() {
        if (++depth_ > kMaxNesting) {
            throw ParseError(peek().offset, "nesting too deep");
        }
        Formula f = primary();
        --depth_;
        return f;
    }

    Formula primary() {
        const Token &t = next();
        switch (t.kind) {
        case Tok::Not:
            return negation(unary());
        case Tok::Symbol:
            return symbol(t.text);
        case Tok::LParen: {
            open_.push_back(t.offset);
            Formula inner = iff();
            const Token &close = next();
            if (close.kind == Tok::End) {
                throw ParseError(open_.back(), "unbalanced parenthesis");
            }
            if (close.kind != Tok::RParen) {
                throw ParseError(close.offset, "expected ')'");
            }
            open_.pop_back();
            return inner;
        }
        case Tok::End:
            if (!open_.empty()) {
                throw ParseError(open_.back(), "unbalanced parenthesis");
            }
            throw ParseError(t.offset, "unexpected end of input");
        case Tok::RParen:
            throw ParseError(t.offset, "unexpected ')'");
        default:
            throw ParseError(t.offset, "expected a symbol, '~' or '('");
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
    std::vector<std::size_t> open_;
};

int precedence(Connective op) {
    switch (op) {
    case Connective::Iff:
        return 1;
    case Connective::Implies:
        return 2;
    case Connective::Or:
        return 3;
    case Connective::And:
        return 4;
    case Connective::Not:
        return 5;
    case Connective::Symbol:
        break;
    }
    return 6;
}

std::string_view spelling(Connective op) {
    switch (op) {
    case Connective::And:
        return " & ";
    case Connective::Or:
        return " | ";
    case Connective::Implies:
        return " -> ";
    case Connective::Iff:
        return " <-> ";
    default:
        return "";
    }
}

void render(const Formula &f, std::string &out, bool parens) {
    if (parens) {
        out += '(';
    }
    const int p = precedence(f.op);
    switch (f.op) {
    case Connective::Symbol:
        out += f.name;
        break;
    case Connective::Not:
        out += '~';
        render(f.operands[0], out, precedence(f.operands[0].op) < p);
        break;
    default: {
        const bool right_assoc =
            f.op == Connective::Implies || f.op == Connective::Iff;
        const int lp = precedence(f.operands[0].op);
        const int rp = precedence(f.operands[1].op);
        render(f.operands[0], out, right_assoc ? lp <= p : lp < p);
        out += spelling(f.op);
        render(f.operands[1], out, right_assoc ? rp < p : rp <= p);
        break;
    }
    }
    if (parens) {
        out += ')';
    }
}

} // namespace

Formula symbol(std::string name) {
    if (name.empty() || !is_alpha(name[0])) {
        throw Error("invalid symbol name '" + name + "'");
    }
    for (char c : name) {
        if (!is_symbol_char(c)) {
            throw Error("invalid symbol name '" + name + "'");
        }
    }
    return {Connective::Symbol, std::move(name), {}};
}

Formula negation(Formula f) { return {Connective::Not, {}, {std::move(f)}}; }

Formula conjunction(Formula lhs, Formula rhs) {
    return {Connective::And, {}, {std::move(lhs), std::move(rhs)}};
}

Formula disjunction(Formula lhs, Formula rhs) {
    return {Connective::Or, {}, {std::move(lhs), std::move(rhs)}};
}

Formula implication(Formula lhs, Formula rhs) {
    return {Connective::Implies, {}, {std::move(lhs), std::move(rhs)}};
}

Formula biconditional(Formula lhs, Formula rhs) {
    return {Connective::Iff, {}, {std::move(lhs), std::move(rhs)}};
}

Formula parse(std::string_view text) {
    return Parser(tokenize(text)).parse_all();
}

std::string to_string(const Formula &f) {
    std::string out;
    render(f, out, false);
    return out;
}

} // namespace eigenmark::logic
