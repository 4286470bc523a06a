#include "a5v/words.hpp"

#include <cctype>
#include <cstdlib>

namespace a5v {

FreeWord FreeWord::gen(const std::string& name, long exp) {
    if (!is_generator_name(name))
        throw std::invalid_argument("bad generator name: " + name);
    FreeWord w;
    w.push(name, exp);
    return w;
}

void FreeWord::push(const std::string& g, long e) {
    if (e == 0)
        return;
    if (!syl_.empty() && syl_.back().gen == g) {
        syl_.back().exp += e;
        if (syl_.back().exp == 0)
            syl_.pop_back();
        return;
    }
    syl_.push_back({g, e});
}

std::size_t FreeWord::length() const {
    std::size_t n = 0;
    for (const auto& s : syl_)
        n += static_cast<std::size_t>(std::labs(s.exp));
    return n;
}

std::vector<std::pair<std::string, int>> FreeWord::letters() const {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& s : syl_)
        for (long i = 0; i < std::labs(s.exp); ++i)
            out.emplace_back(s.gen, s.exp > 0 ? 1 : -1);
    return out;
}

long FreeWord::exponent_sum(const std::string& name) const {
    long n = 0;
    for (const auto& s : syl_)
        if (s.gen == name)
            n += s.exp;
    return n;
}

FreeWord FreeWord::inverse() const {
    FreeWord w;
    for (auto it = syl_.rbegin(); it != syl_.rend(); ++it)
        w.syl_.push_back({it->gen, -it->exp});
    return w;
}

FreeWord FreeWord::power(long n) const {
    FreeWord base = n >= 0 ? *this : inverse();
    FreeWord out;
    for (long i = 0; i < std::labs(n); ++i)
        out *= base;
    return out;
}

FreeWord& FreeWord::operator*=(const FreeWord& b) {
    for (const auto& s : b.syl_)
        push(s.gen, s.exp);
    return *this;
}

std::string FreeWord::to_string() const {
    if (syl_.empty())
        return "1";
    std::string out;
    for (const auto& s : syl_) {
        if (!out.empty())
            out += ' ';
        out += s.gen;
        if (s.exp != 1)
            out += '^' + std::to_string(s.exp);
    }
    return out;
}

bool is_generator_name(const std::string& name) {
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0])))
        return false;
    for (std::size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            return false;
    return true;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    FreeWord parse_all() {
        FreeWord w = word();
        skip();
        if (i_ != s_.size())
            throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
        return w;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }

    bool at_atom() {
        skip();
        if (i_ >= s_.size())
            return false;
        char c = s_[i_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '1';
    }

    FreeWord word() {
        if (!at_atom())
            throw ParseError(i_ < s_.size() ? std::string("unexpected '") + s_[i_] + "'" : "expected a word", i_);
        FreeWord w = factor();
        for (;;) {
            skip();
            if (i_ < s_.size() && s_[i_] == '*') {
                ++i_;
                if (!at_atom())
                    throw ParseError("expected a factor after '*'", i_);
                w *= factor();
            } else if (at_atom()) {
                w *= factor();
            } else {
                return w;
            }
        }
    }

    FreeWord factor() {
        FreeWord a = atom();
        skip();
        if (i_ < s_.size() && s_[i_] == '^') {
            ++i_;
            skip();
            std::size_t start = i_;
            bool neg = false;
            if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
                neg = s_[i_] == '-';
                ++i_;
            }
            std::size_t digits = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
                ++i_;
            if (digits == i_)
                throw ParseError("expected an integer exponent", start);
            if (i_ - digits > 9)
                throw ParseError("exponent too large", digits);
            long e = std::stol(s_.substr(digits, i_ - digits));
            a = a.power(neg ? -e : e);
        }
        return a;
    }

    FreeWord atom() {
        skip();
        char c = s_[i_];
        if (c == '(') {
            std::size_t open = i_++;
            FreeWord w = word();
            skip();
            if (i_ >= s_.size() || s_[i_] != ')')
                throw ParseError("unbalanced '('", open);
            ++i_;
            return w;
        }
        if (c == '1') {
            ++i_;
            return {};
        }
        std::size_t start = i_++;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
            ++i_;
        return FreeWord::gen(s_.substr(start, i_ - start));
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

}  // namespace

FreeWord parse_word(const std::string& text) { return Parser(text).parse_all(); }

FreeWord parse_relator(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos)
        return parse_word(text);
    if (text.find('=', eq + 1) != std::string::npos)
        throw ParseError("more than one '='", text.find('=', eq + 1));
    FreeWord lhs = parse_word(text.substr(0, eq));
    FreeWord rhs;
    try {
        rhs = parse_word(text.substr(eq + 1));
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                         eq + 1 + e.position());
    }
    return lhs * rhs.inverse();
}

}  // namespace a5v
