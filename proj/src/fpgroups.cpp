#include "a5v/fpgroups.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace a5v {

void Presentation::validate() const {
    std::set<std::string> names;
    for (const auto& g : gens) {
        if (!is_generator_name(g))
            throw std::invalid_argument("bad generator name: " + g);
        if (!names.insert(g).second)
            throw std::invalid_argument("duplicate generator: " + g);
    }
    for (const auto& r : relators)
        for (const auto& s : r.syllables())
            if (!names.count(s.gen))
                throw std::invalid_argument("relator " + r.to_string() + " uses undeclared generator " + s.gen);
}

int Presentation::gen_index(const std::string& name) const {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i] == name)
            return static_cast<int>(i);
    return -1;
}

Presentation Presentation::parse(const std::string& text) {
    Presentation p;
    std::istringstream in(text);
    std::string line;
    bool have_gens = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        if (!have_gens) {
            auto colon = line.find(':');
            if (colon == std::string::npos || line.substr(0, colon).find("gens") == std::string::npos)
                throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'gens: ...'");
            std::istringstream names(line.substr(colon + 1));
            std::string g;
            while (names >> g)
                p.gens.push_back(g);
            have_gens = true;
            continue;
        }
        try {
            p.relators.push_back(parse_relator(line));
        } catch (const ParseError& e) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!have_gens)
        throw std::invalid_argument("presentation has no 'gens:' line");
    p.validate();
    return p;
}

std::string Presentation::to_text() const {
    std::string out = "gens:";
    for (const auto& g : gens)
        out += " " + g;
    out += "\n";
    for (const auto& r : relators)
        out += r.to_string() + "\n";
    return out;
}

CosetTable::CosetTable(std::vector<std::string> gens, std::vector<std::vector<int>> rows)
    : gens_(std::move(gens)), rows_(std::move(rows)) {}

int CosetTable::column(const std::string& gen, int sign) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i] == gen)
            return static_cast<int>(2 * i + (sign < 0 ? 1 : 0));
    throw std::out_of_range("unknown generator: " + gen);
}

int CosetTable::apply(int coset, const FreeWord& w) const {
    for (const auto& s : w.syllables()) {
        int col = column(s.gen, s.exp > 0 ? 1 : -1);
        long n = s.exp > 0 ? s.exp : -s.exp;
        for (long i = 0; i < n; ++i)
            coset = rows_[coset][col];
    }
    return coset;
}

std::string CosetTable::self_check(const Presentation& p, const std::vector<FreeWord>& subgroup) const {
    const int n = static_cast<int>(rows_.size());
    const int cols = static_cast<int>(2 * gens_.size());
    for (int c = 0; c < n; ++c)
        for (int x = 0; x < cols; ++x) {
            int d = rows_[c][x];
            if (d < 0 || d >= n)
                return "entry undefined at coset " + std::to_string(c);
            if (rows_[d][x ^ 1] != c)
                return "inverse columns disagree at coset " + std::to_string(c);
        }
    for (const auto& r : p.relators)
        for (int c = 0; c < n; ++c)
            if (apply(c, r) != c)
                return "relator " + r.to_string() + " moves coset " + std::to_string(c);
    for (const auto& h : subgroup)
        if (apply(0, h) != 0)
            return "subgroup generator " + h.to_string() + " moves coset 0";
    std::vector<bool> seen(n);
    std::deque<int> q{0};
    seen[0] = true;
    int reached = 1;
    while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        for (int x = 0; x < cols; ++x)
            if (!seen[rows_[c][x]]) {
                seen[rows_[c][x]] = true;
                ++reached;
                q.push_back(rows_[c][x]);
            }
    }
    if (reached != n)
        return "action is not transitive";
    return {};
}

std::vector<FreeWord> CosetTable::transversal() const {
    std::vector<FreeWord> words(rows_.size());
    std::vector<bool> seen(rows_.size());
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
        int c = q.front();
        q.pop_front();
        for (std::size_t x = 0; x < 2 * gens_.size(); ++x) {
            int d = rows_[c][x];
            if (d >= 0 && !seen[d]) {
                seen[d] = true;
                words[d] = words[c] * FreeWord::gen(gens_[x / 2], x % 2 ? -1 : 1);
                q.push_back(d);
            }
        }
    }
    return words;
}

namespace {

class Enumerator {
public:
    Enumerator(const Presentation& p, std::size_t max_cosets) : ngens_(p.gens.size()), max_(max_cosets) {
        for (const auto& r : p.relators) {
            std::vector<int> cols;
            for (const auto& [g, e] : r.letters())
                cols.push_back(2 * p.gen_index(g) + (e < 0 ? 1 : 0));
            if (!cols.empty())
                relators_.push_back(std::move(cols));
        }
        new_coset();
    }

    std::vector<int> to_cols(const Presentation& p, const FreeWord& w) const {
        std::vector<int> cols;
        for (const auto& [g, e] : w.letters()) {
            int gi = p.gen_index(g);
            if (gi < 0)
                throw std::invalid_argument("subgroup generator uses undeclared generator " + g);
            cols.push_back(2 * gi + (e < 0 ? 1 : 0));
        }
        return cols;
    }

    void run(const std::vector<std::vector<int>>& subgroup) {
        for (const auto& h : subgroup)
            scan_and_fill(0, h);
        for (std::size_t c = 0; c < table_.size(); ++c) {
            for (const auto& r : relators_) {
                if (!live(c))
                    break;
                scan_and_fill(static_cast<int>(c), r);
            }
            if (!live(c))
                continue;
            for (std::size_t x = 0; x < 2 * ngens_; ++x)
                if (live(c) && table_[c][x] < 0)
                    define(static_cast<int>(c), static_cast<int>(x));
        }
    }

    CosetTable finish(const Presentation& p) {
        std::vector<int> renumber(table_.size(), -1);
        int n = 0;
        for (std::size_t c = 0; c < table_.size(); ++c)
            if (live(c))
                renumber[c] = n++;
        std::vector<std::vector<int>> rows;
        rows.reserve(n);
        for (std::size_t c = 0; c < table_.size(); ++c) {
            if (!live(c))
                continue;
            std::vector<int> row(2 * ngens_);
            for (std::size_t x = 0; x < row.size(); ++x)
                row[x] = table_[c][x] < 0 ? -1 : renumber[rep(table_[c][x])];
            rows.push_back(std::move(row));
        }
        return CosetTable(p.gens, std::move(rows));
    }

    EnumerationStats stats;

private:
    bool live(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

    int rep(int c) const {
        while (parent_[c] != c)
            c = parent_[c];
        return c;
    }

    int compress(int c) {
        int r = rep(c);
        while (parent_[c] != r) {
            int next = parent_[c];
            parent_[c] = r;
            c = next;
        }
        return r;
    }

    int new_coset() {
        table_.emplace_back(2 * ngens_, -1);
        parent_.push_back(static_cast<int>(table_.size()) - 1);
        ++live_;
        ++stats.defined;
        stats.max_live = std::max(stats.max_live, live_);
        return static_cast<int>(table_.size()) - 1;
    }

    void define(int c, int x) {
        if (live_ >= max_) {
            lookahead();
            if (live_ >= max_)
                throw BudgetExhausted("coset enumeration exceeded " + std::to_string(max_) + " cosets");
        }
        if (!live(c) || table_[c][x] >= 0)
            return;
        int d = new_coset();
        table_[c][x] = d;
        table_[d][x ^ 1] = c;
    }

    // HLT scan: fills gaps by defining new cosets.
    void scan_and_fill(int c, const std::vector<int>& w) {
        const int n = static_cast<int>(w.size());
        for (;;) {
            if (!live(c))
                return;
            int f = c, i = 0, b = c, j = n - 1;
            while (i <= j && table_[f][w[i]] >= 0)
                f = table_[f][w[i++]];
            if (i > j) {
                if (f != c)
                    coincidence(f, c);
                return;
            }
            while (j >= i && table_[b][w[j] ^ 1] >= 0)
                b = table_[b][w[j--] ^ 1];
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                table_[f][w[i]] = b;
                table_[b][w[i] ^ 1] = f;
                return;
            }
            define(f, w[i]);
        }
    }

    // Scan without defining: records deductions and coincidences only.
    void scan(int c, const std::vector<int>& w) {
        const int n = static_cast<int>(w.size());
        int f = c, i = 0, b = c, j = n - 1;
        while (i <= j && table_[f][w[i]] >= 0)
            f = table_[f][w[i++]];
        if (i > j) {
            if (f != c)
                coincidence(f, c);
            return;
        }
        while (j >= i && table_[b][w[j] ^ 1] >= 0)
            b = table_[b][w[j--] ^ 1];
        if (j < i)
            coincidence(f, b);
        else if (i == j) {
            table_[f][w[i]] = b;
            table_[b][w[i] ^ 1] = f;
        }
    }

    void lookahead() {
        ++stats.lookaheads;
        for (std::size_t c = 0; c < table_.size(); ++c)
            for (const auto& r : relators_) {
                if (!live(c))
                    break;
                scan(static_cast<int>(c), r);
            }
    }

    void merge(int a, int b, std::vector<int>& queue) {
        a = compress(a);
        b = compress(b);
        if (a == b)
            return;
        if (a > b)
            std::swap(a, b);
        parent_[b] = a;
        --live_;
        queue.push_back(b);
    }

    void coincidence(int a, int b) {
        std::vector<int> queue;
        merge(a, b, queue);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            int e = queue[qi];
            for (std::size_t x = 0; x < 2 * ngens_; ++x) {
                int f = table_[e][x];
                if (f < 0)
                    continue;
                if (table_[f][x ^ 1] == e)
                    table_[f][x ^ 1] = -1;
                int e1 = compress(e), f1 = compress(f);
                if (table_[e1][x] >= 0)
                    merge(f1, table_[e1][x], queue);
                else if (table_[f1][x ^ 1] >= 0)
                    merge(e1, table_[f1][x ^ 1], queue);
                else {
                    table_[e1][x] = f1;
                    table_[f1][x ^ 1] = e1;
                }
            }
        }
    }

    std::size_t ngens_;
    std::size_t max_;
    std::size_t live_ = 0;
    std::vector<std::vector<int>> relators_;
    std::vector<std::vector<int>> table_;
    std::vector<int> parent_;
};

}  // namespace

CosetTable todd_coxeter(const Presentation& p, const std::vector<FreeWord>& subgroup, std::size_t max_cosets,
                        EnumerationStats* stats) {
    p.validate();
    if (max_cosets == 0)
        throw BudgetExhausted("coset budget is zero");
    Enumerator e(p, max_cosets);
    std::vector<std::vector<int>> sub;
    for (const auto& h : subgroup)
        sub.push_back(e.to_cols(p, h));
    e.run(sub);
    CosetTable t = e.finish(p);
    if (stats)
        *stats = e.stats;
    if (std::string err = t.self_check(p, subgroup); !err.empty())
        throw std::logic_error("coset table failed self-check: " + err);
    return t;
}

std::map<std::string, Perm> coset_action(const CosetTable& t) {
    std::map<std::string, Perm> out;
    for (std::size_t g = 0; g < t.gens().size(); ++g) {
        std::vector<int> img(t.size());
        for (std::size_t c = 0; c < t.size(); ++c) {
            img[c] = t.act(static_cast<int>(c), static_cast<int>(2 * g));
            if (img[c] < 0)
                throw std::invalid_argument("coset table is incomplete");
        }
        out.emplace(t.gens()[g], Perm(std::move(img)));
    }
    return out;
}

IntMat exponent_matrix(const std::vector<FreeWord>& relators, const std::vector<std::string>& variables) {
    IntMat m(relators.size(), variables.size());
    for (std::size_t i = 0; i < relators.size(); ++i)
        for (std::size_t j = 0; j < variables.size(); ++j)
            m(i, j) = relators[i].exponent_sum(variables[j]);
    return m;
}

Normalization normalize_relators(const std::vector<FreeWord>& relators, const std::vector<std::string>& variables) {
    IntMat m = exponent_matrix(relators, variables);
    if (m.rows() != m.cols())
        throw std::invalid_argument("exponent matrix is not square");
    auto rd = int_rank_det(m);
    if (!rd.det || (*rd.det != 1 && *rd.det != -1))
        throw std::invalid_argument("exponent matrix is not unimodular");

    Normalization out{relators, {}};
    const std::size_t n = m.rows();
    auto& w = out.relators;
    auto multiply = [&](std::size_t i, std::size_t j) {
        w[i] = w[i] * w[j];
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) += m(j, k);
        out.log.push_back({"multiply", i, j});
    };
    auto invert = [&](std::size_t i) {
        w[i] = w[i].inverse();
        for (std::size_t k = 0; k < n; ++k)
            m(i, k) = -m(i, k);
        out.log.push_back({"invert", i, i});
    };
    auto swap = [&](std::size_t i, std::size_t j) {
        std::swap(w[i], w[j]);
        for (std::size_t k = 0; k < n; ++k)
            std::swap(m(i, k), m(j, k));
        out.log.push_back({"swap", i, j});
    };
    // row_i -= row_j as invert j, multiply, invert j
    auto subtract = [&](std::size_t i, std::size_t j) {
        invert(j);
        multiply(i, j);
        invert(j);
    };

    for (std::size_t c = 0; c < n; ++c) {
        for (;;) {
            std::size_t piv = n;
            for (std::size_t r = c; r < n; ++r)
                if (m(r, c) != 0 && (piv == n || abs(m(r, c)) < abs(m(piv, c))))
                    piv = r;
            if (piv == n)
                throw std::logic_error("normalize_relators: singular column");
            if (piv != c)
                swap(c, piv);
            if (m(c, c) < 0)
                invert(c);
            bool clear = true;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == c || m(r, c) == 0)
                    continue;
                Integer q = m(r, c) / m(c, c);  // truncates toward zero
                for (; q > 0; --q)
                    subtract(r, c);
                for (; q < 0; ++q)
                    multiply(r, c);
                if (m(r, c) != 0 && r > c)
                    clear = false;
            }
            if (clear && m(c, c) == 1) {
                bool above_clean = true;
                for (std::size_t r = 0; r < n; ++r)
                    if (r != c && m(r, c) != 0)
                        above_clean = false;
                if (above_clean)
                    break;
            }
        }
    }
    if (!(m == IntMat::identity(n)))
        throw std::logic_error("normalize_relators: did not reach the identity");
    return out;
}

bool verify_word_identity(const Presentation& p, const FreeWord& lhs, const FreeWord& rhs, std::size_t max_cosets) {
    CosetTable t = todd_coxeter(p, {}, max_cosets);
    for (std::size_t c = 0; c < t.size(); ++c)
        if (t.apply(static_cast<int>(c), lhs) != t.apply(static_cast<int>(c), rhs))
            return false;
    return true;
}

bool conjugate_in_regular_action(const CosetTable& t, const FreeWord& x, const FreeWord& y) {
    // x ~ y iff x h = h y for some h; h runs over the transversal words.
    int cx = t.apply(0, x);
    auto words = t.transversal();
    for (std::size_t c = 0; c < t.size(); ++c)
        if (t.apply(cx, words[c]) == t.apply(static_cast<int>(c), y))
            return true;
    return false;
}

Presentation builtin_presentation(const std::string& name) {
    if (name == "lemma-bac3")
        return Presentation::parse("gens: a b c\na^2\nb^3\nc^2\n(ab)^3\n(bc)^2\n(ca)^5\n(bac)^3\n");
    if (name == "a5-xy")
        return Presentation::parse("gens: x y\nx^2\ny^5\n(xy)^3\n");
    if (name == "gtilde-a5")
        return Presentation::parse("gens: a b c\na^2\nb^3\nc^2\n(ab)^3\n(bc)^2\n(ca)^5\n");
    if (name == "gamma0")
        return Presentation::parse(
            "gens: a b c d x0\na^2\nb^3\nc^2\nd^2\n(ab)^3\n(bc)^2\n(cd)^5\nx0 a x0^-1 = d\n");
    throw std::invalid_argument("unknown builtin presentation: " + name);
}

}  // namespace a5v
