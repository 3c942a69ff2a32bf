#pragma once

#include <cctype>
#include <string>

#include "detcert/poly.hpp"

namespace detcert {

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, int nvars, char alphabet)
        : s_(text), nvars_(nvars), alphabet_(alphabet) {}

    Poly run() {
        Poly result(nvars_);
        skip_ws();
        if (eof()) throw ParseError("empty polynomial", pos());
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = (peek() == '-');
            advance();
        }
        result = result + parse_term(negate);
        skip_ws();
        while (!eof()) {
            char op = peek();
            if (op != '+' && op != '-')
                throw ParseError(std::string("expected '+' or '-', found '") + op + "'", pos());
            advance();
            result = result + parse_term(op == '-');
            skip_ws();
        }
        return result;
    }

private:
    bool eof() const { return i_ >= s_.size(); }
    char peek() const { return s_[i_]; }
    void advance() { ++i_; }
    std::size_t pos() const { return i_ + 1; }  // 1-based for diagnostics

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    Int parse_int() {
        skip_ws();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected an integer", pos());
        std::string digits;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            digits.push_back(peek());
            advance();
        }
        return Int(digits);
    }

    // x<k> or x<k>^<e>, returned as (variable index, exponent).
    std::pair<int, int> parse_factor() {
        skip_ws();
        std::size_t at = pos();
        if (eof() || peek() != alphabet_) {
            std::string found = eof() ? "end of input" : std::string("'") + peek() + "'";
            throw ParseError(std::string("expected variable '") + alphabet_ + "<k>', found " + found, at);
        }
        advance();
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected a variable index", pos());
        Int k = parse_int();
        if (k < 1 || k > nvars_)
            throw ParseError("unknown variable " + std::string(1, alphabet_) + k.get_str() +
                                 " (declared count is " + std::to_string(nvars_) + ")",
                             at);
        int exponent = 1;
        skip_ws();
        if (!eof() && peek() == '^') {
            advance();
            Int e = parse_int();
            if (e > 1000000) throw ParseError("exponent too large", pos());
            exponent = static_cast<int>(e.get_si());
        }
        return {static_cast<int>(k.get_si()) - 1, exponent};
    }

    Poly parse_term(bool negate) {
        skip_ws();
        if (eof()) throw ParseError("expected a term", pos());
        Rat coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Int num = parse_int();
            Int den(1);
            skip_ws();
            if (!eof() && peek() == '/') {
                advance();
                den = parse_int();
                if (den == 0) throw ParseError("zero denominator", pos());
            }
            coeff = make_rat(num, den);
            have_coeff = true;
            skip_ws();
            if (!eof() && peek() == '*') {
                advance();
                skip_ws();
            }
        }
        Monomial mono = Monomial::one(nvars_);
        bool have_factor = false;
        skip_ws();
        if (!eof() && peek() == alphabet_) {
            for (;;) {
                auto [idx, exponent] = parse_factor();
                mono.e[static_cast<std::size_t>(idx)] += exponent;
                have_factor = true;
                skip_ws();
                std::size_t save = i_;
                if (!eof() && peek() == '*') {
                    advance();
                    skip_ws();
                    if (!eof() && peek() == alphabet_) continue;
                    i_ = save;  // the '*' belonged to something malformed
                    throw ParseError("expected a variable after '*'", save + 2);
                }
                break;
            }
        }
        if (!have_coeff && !have_factor)
            throw ParseError(std::string("expected a term, found '") + (eof() ? ' ' : peek()) + "'",
                             pos());
        if (negate) coeff = -coeff;
        return Poly::term(nvars_, mono, coeff);
    }

    const std::string& s_;
    std::size_t i_ = 0;
    int nvars_;
    char alphabet_;
};

}  // namespace detail

// Parse a polynomial expression over variables <alphabet>1..<alphabet>N.
inline Poly parse_poly(const std::string& text, int nvars, char alphabet = 'x') {
    if (nvars < 1) throw InputError("variable count must be at least 1");
    return detail::PolyParser(text, nvars, alphabet).run();
}

}  // namespace detcert
