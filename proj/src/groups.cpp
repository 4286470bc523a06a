#include "a5v/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace a5v {

Perm::Perm(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size());
    for (int x : img_) {
        if (x < 0 || x >= static_cast<int>(img_.size()) || seen[x])
            throw std::invalid_argument("Perm: images are not a bijection");
        seen[x] = true;
    }
}

Perm Perm::identity(int degree) {
    std::vector<int> v(degree);
    std::iota(v.begin(), v.end(), 0);
    Perm p;
    p.img_ = std::move(v);
    return p;
}

Perm Perm::parse_cycles(const std::string& text, int degree) {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    std::vector<bool> used(degree);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip();
    while (i < text.size()) {
        if (text[i] != '(')
            throw ParseError("expected '('", i);
        ++i;
        std::vector<int> cycle;
        for (;;) {
            skip();
            if (i < text.size() && text[i] == ')' && cycle.empty()) {
                break;  // "()"
            }
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
                ++i;
            if (start == i)
                throw ParseError("expected a point", i);
            int pt = std::stoi(text.substr(start, i - start));
            if (pt < 1 || pt > degree)
                throw ParseError("point out of range", start);
            if (used[pt - 1])
                throw ParseError("point repeated", start);
            used[pt - 1] = true;
            cycle.push_back(pt - 1);
            skip();
            if (i < text.size() && text[i] == ',') {
                ++i;
                continue;
            }
            if (i < text.size() && text[i] == ')')
                break;
            throw ParseError("expected ',' or ')'", i);
        }
        ++i;
        for (std::size_t k = 0; k < cycle.size(); ++k)
            img[cycle[k]] = cycle[(k + 1) % cycle.size()];
        skip();
    }
    return Perm(std::move(img));
}

bool Perm::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (img_[i] != i)
            return false;
    return true;
}

Perm Perm::inverse() const {
    std::vector<int> v(img_.size());
    for (int i = 0; i < degree(); ++i)
        v[img_[i]] = i;
    Perm p;
    p.img_ = std::move(v);
    return p;
}

long Perm::order() const {
    long o = 1;
    std::vector<bool> seen(img_.size());
    for (int i = 0; i < degree(); ++i) {
        if (seen[i])
            continue;
        long len = 0;
        for (int j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            ++len;
        }
        o = std::lcm(o, len);
    }
    return o;
}

std::string Perm::to_cycles() const {
    std::string out;
    std::vector<bool> seen(img_.size());
    for (int i = 0; i < degree(); ++i) {
        if (seen[i] || img_[i] == i)
            continue;
        out += '(';
        for (int j = i; !seen[j]; j = img_[j]) {
            seen[j] = true;
            if (j != i)
                out += ',';
            out += std::to_string(j + 1);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Perm operator*(const Perm& p, const Perm& q) {
    if (p.degree() != q.degree())
        throw std::invalid_argument("Perm: degree mismatch");
    Perm r;
    r.img_.resize(p.img_.size());
    for (int i = 0; i < p.degree(); ++i)
        r.img_[i] = q.img_[p.img_[i]];
    return r;
}

PermGroup PermGroup::closure(std::vector<Perm> generators, int degree) {
    PermGroup g;
    g.degree_ = degree;
    for (const auto& p : generators)
        if (p.degree() != degree)
            throw std::invalid_argument("PermGroup: generator degree mismatch");
    g.gens_ = std::move(generators);
    std::set<Perm> seen{Perm::identity(degree)};
    std::vector<Perm> frontier{Perm::identity(degree)};
    while (!frontier.empty()) {
        std::vector<Perm> next;
        for (const auto& x : frontier)
            for (const auto& s : g.gens_) {
                Perm y = x * s;
                if (seen.insert(y).second)
                    next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    g.elems_.assign(seen.begin(), seen.end());
    return g;
}

bool PermGroup::contains(const Perm& g) const { return std::binary_search(elems_.begin(), elems_.end(), g); }

bool PermGroup::is_subgroup_of(const PermGroup& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
}

PermGroup PermGroup::conjugate(const Perm& g) const {
    std::vector<Perm> gens;
    for (const auto& s : gens_)
        gens.push_back(g.inverse() * s * g);
    return closure(std::move(gens), degree_);
}

PermGroup PermGroup::derived_subgroup() const {
    std::set<Perm> comms;
    for (const auto& x : elems_)
        for (const auto& y : elems_)
            comms.insert(x.inverse() * y.inverse() * x * y);
    return closure(std::vector<Perm>(comms.begin(), comms.end()), degree_);
}

Perm PermGroup::left_coset_rep(const Perm& x) const {
    Perm best = x * elems_.front();
    for (const auto& h : elems_)
        best = std::min(best, x * h);
    return best;
}

bool is_solvable(const PermGroup& h) {
    PermGroup cur = h;
    while (cur.order() > 1) {
        PermGroup next = cur.derived_subgroup();
        if (next.order() == cur.order())
            return false;
        cur = std::move(next);
    }
    return true;
}

PermGroup normalizer(const PermGroup& g, const PermGroup& h) {
    std::vector<Perm> gens;
    for (const auto& x : g.elements())
        if (h.conjugate(x) == h)
            gens.push_back(x);
    return PermGroup::closure(std::move(gens), g.degree());
}

int SubgroupLattice::index_of(const PermGroup& h) const {
    for (std::size_t i = 0; i < subgroups.size(); ++i)
        if (subgroups[i] == h)
            return static_cast<int>(i);
    return -1;
}

std::vector<int> SubgroupLattice::maximal() const {
    std::vector<int> out;
    const int top = static_cast<int>(subgroups.size()) - 1;
    for (int i = 0; i < top; ++i) {
        bool is_max = true;
        for (int j = 0; j < top && is_max; ++j)
            if (j != i && contains[j][i] && subgroups[j].order() > subgroups[i].order())
                is_max = false;
        if (is_max)
            out.push_back(i);
    }
    return out;
}

SubgroupLattice subgroup_lattice(const PermGroup& g) {
    std::set<std::vector<Perm>> seen;
    std::vector<PermGroup> found;
    auto add = [&](PermGroup h) {
        if (seen.insert(h.elements()).second) {
            found.push_back(std::move(h));
            return true;
        }
        return false;
    };
    for (const auto& x : g.elements())
        add(PermGroup::closure({x}, g.degree()));
    // pairwise joins until nothing new appears
    for (std::size_t done = 0; done < found.size();) {
        std::size_t end = found.size();
        for (std::size_t i = done; i < end; ++i)
            for (std::size_t j = 0; j < end; ++j) {
                if (j >= done && j < i)
                    continue;
                std::vector<Perm> gens = found[i].generators();
                gens.insert(gens.end(), found[j].generators().begin(), found[j].generators().end());
                add(PermGroup::closure(std::move(gens), g.degree()));
            }
        done = end;
    }
    std::sort(found.begin(), found.end(), [](const PermGroup& a, const PermGroup& b) {
        if (a.order() != b.order())
            return a.order() < b.order();
        return a.elements() < b.elements();
    });

    SubgroupLattice lat;
    lat.subgroups = std::move(found);
    const std::size_t n = lat.subgroups.size();
    lat.contains.assign(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            lat.contains[i][j] = lat.subgroups[j].is_subgroup_of(lat.subgroups[i]);
    lat.conj_class.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (lat.conj_class[i] >= 0)
            continue;
        int id = static_cast<int>(lat.classes.size());
        lat.classes.emplace_back();
        for (const auto& x : g.elements()) {
            int k = lat.index_of(lat.subgroups[i].conjugate(x));
            if (lat.conj_class[k] < 0) {
                lat.conj_class[k] = id;
                lat.classes[id].push_back(k);
            }
        }
        std::sort(lat.classes[id].begin(), lat.classes[id].end());
    }
    return lat;
}

const std::map<std::string, Perm>& phi_images() {
    static const std::map<std::string, Perm> m = {
        {"a", Perm::parse_cycles("(2,5)(3,4)", 5)},
        {"b", Perm::parse_cycles("(3,5,4)", 5)},
        {"c", Perm::parse_cycles("(1,2)(3,5)", 5)},
        {"d", Perm::parse_cycles("(2,5)(3,4)", 5)},
    };
    return m;
}

const PermGroup& a5() {
    static const PermGroup g = PermGroup::closure(
        {Perm::parse_cycles("(1,2,3)", 5), Perm::parse_cycles("(1,2,3,4,5)", 5)}, 5);
    return g;
}

Perm eval_perm_word(const std::map<std::string, Perm>& images, const FreeWord& w, int degree, bool x_trivial) {
    Perm out = Perm::identity(degree);
    for (const auto& s : w.syllables()) {
        auto it = images.find(s.gen);
        Perm g;
        if (it != images.end())
            g = it->second;
        else if (x_trivial && s.gen.size() > 1 && s.gen[0] == 'x')
            continue;
        else
            throw std::out_of_range("unknown generator: " + s.gen);
        Perm base = s.exp > 0 ? g : g.inverse();
        long n = s.exp > 0 ? s.exp : -s.exp;
        n %= base.order();
        for (long i = 0; i < n; ++i)
            out = out * base;
    }
    return out;
}

Perm phi_eval(const FreeWord& w) { return eval_perm_word(phi_images(), w, 5, true); }

bool kernel_check(const FreeWord& w) { return phi_eval(w).is_identity(); }

}  // namespace a5v
