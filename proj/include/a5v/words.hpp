// Free-group words over named generators and their text grammar:
//
//   word   := factor+          (juxtaposition or '*')
//   factor := atom ('^' signed-int)?
//   atom   := generator | '(' word ')' | '1'
//
// A generator name is one letter followed by optional digits, so "bac"
// reads as b a c and "x0" as a single generator.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace a5v {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class FreeWord {
public:
    struct Syllable {
        std::string gen;
        long exp;
        bool operator==(const Syllable&) const = default;
    };

    FreeWord() = default;
    static FreeWord gen(const std::string& name, long exp = 1);

    const std::vector<Syllable>& syllables() const { return syl_; }
    bool empty() const { return syl_.empty(); }
    /// Sum of |exponents|.
    std::size_t length() const;
    /// Letters one at a time, each with exponent +1 or -1.
    std::vector<std::pair<std::string, int>> letters() const;
    long exponent_sum(const std::string& name) const;

    FreeWord inverse() const;
    FreeWord power(long n) const;

    /// Replace each generator by a word (missing generators stay).
    template <class F>
    FreeWord substitute(F&& image) const {
        FreeWord out;
        for (const auto& s : syl_)
            out *= image(s.gen).power(s.exp);
        return out;
    }

    FreeWord& operator*=(const FreeWord& b);
    friend FreeWord operator*(FreeWord a, const FreeWord& b) { return a *= b; }
    bool operator==(const FreeWord& b) const = default;

    /// "b a c x0^-1"; the empty word prints as "1".
    std::string to_string() const;

private:
    void push(const std::string& g, long e);
    std::vector<Syllable> syl_;
};

FreeWord parse_word(const std::string& text);

/// "u = v" becomes u v^-1; a plain word is returned as is.
FreeWord parse_relator(const std::string& text);

bool is_generator_name(const std::string& name);

}  // namespace a5v
