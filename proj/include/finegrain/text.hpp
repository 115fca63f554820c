#ifndef FINEGRAIN_TEXT_HPP
#define FINEGRAIN_TEXT_HPP

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"

namespace fgr::detail {

// Whitespace token stream with line numbers; lines starting with '#' are comments.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) {
        std::string line, tok;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ls(line);
            if (!(ls >> tok) || tok[0] == '#') continue;
            do {
                tokens_.push_back({tok, lineno});
            } while (ls >> tok);
        }
        last_line_ = lineno;
    }

    bool done() const noexcept { return pos_ >= tokens_.size(); }
    std::size_t line() const noexcept { return done() ? last_line_ : tokens_[pos_].line; }

    const std::string& peek() const {
        if (done()) throw ParseError(last_line_, "unexpected end of input");
        return tokens_[pos_].text;
    }

    std::string word() {
        const std::string& w = peek();
        ++pos_;
        return w;
    }

    void expect(const std::string& w) {
        const std::size_t l = line();
        if (word() != w) throw ParseError(l, "expected '" + w + "'");
    }

    std::int64_t integer() {
        const std::size_t l = line();
        const std::string w = word();
        char* end = nullptr;
        const long long v = std::strtoll(w.c_str(), &end, 10);
        if (w.empty() || *end != '\0') throw ParseError(l, "expected an integer, got '" + w + "'");
        return v;
    }

    std::size_t count() {
        const std::size_t l = line();
        const auto v = integer();
        if (v < 0) throw ParseError(l, "expected a nonnegative count");
        return static_cast<std::size_t>(v);
    }

    /// A prime field modulus below 2^32.
    std::uint64_t modulus() {
        const std::size_t l = line();
        const auto v = count();
        bool prime = v >= 2 && v < (std::uint64_t{1} << 32);
        for (std::uint64_t d = 2; prime && d * d <= v; ++d) prime = v % d != 0;
        if (!prime) throw ParseError(l, "modulus " + std::to_string(v) + " is not a prime below 2^32");
        return v;
    }

    double real() {
        const std::size_t l = line();
        const std::string w = word();
        char* end = nullptr;
        const double v = std::strtod(w.c_str(), &end);
        if (w.empty() || *end != '\0') throw ParseError(l, "expected a number, got '" + w + "'");
        return v;
    }

    void expect_end() const {
        if (!done()) throw ParseError(line(), "trailing content '" + tokens_[pos_].text + "'");
    }

private:
    struct Token {
        std::string text;
        std::size_t line;
    };
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::size_t last_line_ = 0;
};

} // namespace fgr::detail

#endif
