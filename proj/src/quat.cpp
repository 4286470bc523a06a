#include "a5v/quat.hpp"

#include <stdexcept>

namespace a5v {

Mat3<AN> quat_p(const Quat& q) {
    if (!(q.norm2() == AN(1)))
        throw std::invalid_argument("p: quaternion is not a unit");
    const AN &w = q.w(), &x = q.x(), &y = q.y(), &z = q.z();
    return {{1 - 2 * (y * y + z * z), 2 * (x * y + w * z), 2 * (x * z - w * y)},
            {2 * (x * y - w * z), 1 - 2 * (x * x + z * z), 2 * (y * z + w * x)},
            {2 * (x * z + w * y), 2 * (y * z - w * x), 1 - 2 * (x * x + y * y)}};
}

Vec3<AN> quat_psi(const Quat& q) { return {q.x(), q.y(), q.z()}; }

Quat quat_from_vector(const Vec3<AN>& v) { return {AN(0), v[0], v[1], v[2]}; }

Quat conj_action(const Quat& q, const Quat& v) {
    if (!v.is_pure())
        throw std::invalid_argument("conj_action: v must be pure");
    return q * v * q.inverse();
}

Quat phi_disk(const AN& b, const AN& c, const AN& d, Tower& tower) {
    AN r = 1 - b * b - c * c - d * d;
    if (r.sign() < 0)
        throw std::invalid_argument("phi_disk: point outside the unit disk");
    AN root = r.is_zero() ? AN(0) : sqrt_or_adjoin(tower, r, "phi");
    return {root, b, c, d};
}

QuatJet phi_disk_jet(const AN& b, const AN& c, const AN& d, std::size_t first, std::size_t arity, Tower& tower) {
    Quat v = phi_disk(b, c, d, tower);
    if (v.w().is_zero())
        throw std::invalid_argument("phi_disk_jet: not differentiable on the boundary sphere");
    AN inv = v.w().inverse();
    std::vector<Quat> partials(arity, Quat(0));
    partials.at(first) = Quat(-b * inv, 1, 0, 0);
    partials.at(first + 1) = Quat(-c * inv, 0, 1, 0);
    partials.at(first + 2) = Quat(-d * inv, 0, 0, 1);
    return QuatJet(v, std::move(partials));
}

Quat lift_rotation(const Mat3<AN>& m, Tower& tower) {
    if (!is_special_orthogonal(m))
        throw std::invalid_argument("lift_rotation: matrix is not special orthogonal");
    auto e = [&](int i, int j) { return m(i - 1, j - 1); };
    // 4 * (w^2, x^2, y^2, z^2)
    std::array<AN, 4> sq{1 + e(1, 1) + e(2, 2) + e(3, 3), 1 + e(1, 1) - e(2, 2) - e(3, 3),
                         1 - e(1, 1) + e(2, 2) - e(3, 3), 1 - e(1, 1) - e(2, 2) + e(3, 3)};
    int pivot = -1;
    AN root;
    for (int i = 0; i < 4 && pivot < 0; ++i)
        if (sq[i].sign() > 0)
            if (auto r = try_sqrt(sq[i] * Rational(1, 4))) {
                pivot = i;
                root = *r;
            }
    if (pivot < 0) {
        for (int i = 0; i < 4 && pivot < 0; ++i)
            if (sq[i].sign() > 0) {
                pivot = i;
                root = sqrt_or_adjoin(tower, sq[i] * Rational(1, 4), "q" + std::to_string(tower->height() + 1));
            }
    }
    AN d = (4 * root).inverse();
    std::array<AN, 4> c;
    c[pivot] = root;
    switch (pivot) {
    case 0:
        c[1] = (e(2, 3) - e(3, 2)) * d;
        c[2] = (e(3, 1) - e(1, 3)) * d;
        c[3] = (e(1, 2) - e(2, 1)) * d;
        break;
    case 1:
        c[0] = (e(2, 3) - e(3, 2)) * d;
        c[2] = (e(1, 2) + e(2, 1)) * d;
        c[3] = (e(1, 3) + e(3, 1)) * d;
        break;
    case 2:
        c[0] = (e(3, 1) - e(1, 3)) * d;
        c[1] = (e(1, 2) + e(2, 1)) * d;
        c[3] = (e(2, 3) + e(3, 2)) * d;
        break;
    default:
        c[0] = (e(1, 2) - e(2, 1)) * d;
        c[1] = (e(1, 3) + e(3, 1)) * d;
        c[2] = (e(2, 3) + e(3, 2)) * d;
    }
    Quat q(c[0], c[1], c[2], c[3]);
    for (int i = 0; i < 4; ++i)
        if (!q[i].is_zero()) {
            if (q[i].sign() < 0)
                q = -q;
            break;
        }
    if (!(quat_p(q) == m))
        throw std::logic_error("lift_rotation: p(q) does not reproduce the matrix");
    return q;
}

void TPoint::validate() const {
    for (int i = 0; i < 3; ++i) {
        if (!(cos[i] * cos[i] + sin[i] * sin[i] == AN(1)))
            throw std::invalid_argument("TPoint: full angle off the circle");
        if (!(half_cos[i] * half_cos[i] + half_sin[i] * half_sin[i] == AN(1)))
            throw std::invalid_argument("TPoint: half angle off the circle");
        if (!(2 * half_cos[i] * half_cos[i] - 1 == cos[i]) || !(2 * half_sin[i] * half_cos[i] == sin[i]))
            throw std::invalid_argument("TPoint: half angle does not double to the full angle");
    }
    for (const auto& v : disk)
        if ((1 - v[0] * v[0] - v[1] * v[1] - v[2] * v[2]).sign() < 0)
            throw std::invalid_argument("TPoint: disk coordinate outside the unit disk");
}

TPoint make_t_bad(const CirclePoint& zbad, int k) {
    TPoint t;
    t.tower = canonical_k();
    for (int i = 0; i < 3; ++i) {
        t.cos[i] = zbad[2 * i];
        t.sin[i] = zbad[2 * i + 1];
        if (t.sin[i].sign() <= 0)
            throw std::invalid_argument("make_t_bad: beta_i must be positive");
        t.half_cos[i] = sqrt_or_adjoin(t.tower, (1 + t.cos[i]) * Rational(1, 2), "c" + std::to_string(i + 1));
    }
    for (int i = 0; i < 3; ++i)
        t.half_sin[i] = t.sin[i] * (2 * t.half_cos[i]).inverse();
    t.disk.assign(k, Vec3<AN>{AN(0), AN(0), AN(0)});
    t.validate();
    return t;
}

namespace {

Quat rotation_value(const TPoint& t, int i) { return {t.half_cos[i], 0, 0, t.half_sin[i]}; }

Quat signed_lift(const std::array<Quat, 7>& raw, unsigned mask, int i) {
    return (mask >> i) & 1 ? -raw[i] : raw[i];
}

}  // namespace

QuatModel::QuatModel(const TPoint& t) : t_(t) {
    const auto& k = constant_matrices();
    const Mat3<AN>* mats[] = {&k.A, &k.B, &k.S0, &k.S1, &k.S2, &k.S3, &k.S4};
    for (int i = 0; i < 7; ++i)
        raw_[i] = lift_rotation(*mats[i], t_.tower);
    auto found = choose_signs(*this);
    if (!found)
        throw std::runtime_error("no sign assignment normalizes X0 and (BAC)^3 at t_bad");
    mask_ = *found;
    for (int i = 0; i < 7; ++i)
        lifts_[i] = signed_lift(raw_, mask_, i);

    auto cst = [&](int i) { return QuatJet(lifts_[i]); };
    QuatJet r1 = rotation_jet(0), r2 = rotation_jet(1), r3 = rotation_jet(2);
    gens_["a"] = cst(0);
    gens_["b"] = cst(1);
    gens_["c"] = r1 * cst(2) * r1.inverse();
    gens_["d"] = r1 * cst(3) * r2 * cst(4) * r2.inverse() * cst(3).inverse() * r1.inverse();
    gens_["x0"] = r1 * cst(3) * r2 * cst(5) * r3 * cst(6);
    for (std::size_t i = 0; i < t_.disk.size(); ++i) {
        const auto& v = t_.disk[i];
        gens_["x" + std::to_string(i + 1)] = phi_disk_jet(v[0], v[1], v[2], 3 * (i + 1), arity(), t_.tower);
    }
}

QuatJet QuatModel::rotation_jet(int i) const {
    // d/dt (cos(t/2) + k sin(t/2)) = -sin(t/2)/2 + k cos(t/2)/2
    std::vector<Quat> partials(arity(), Quat(0));
    partials[i] = Quat(-t_.half_sin[i] * Rational(1, 2), 0, 0, t_.half_cos[i] * Rational(1, 2));
    return QuatJet(rotation_value(t_, i), std::move(partials));
}

std::pair<Quat, Quat> QuatModel::normalizations(unsigned mask) const {
    auto s = [&](int i) { return signed_lift(raw_, mask, i); };
    Quat r1 = rotation_value(t_, 0), r2 = rotation_value(t_, 1), r3 = rotation_value(t_, 2);
    Quat x0 = r1 * s(3) * r2 * s(5) * r3 * s(6);
    Quat c = r1 * s(2) * r1.inverse();
    Quat bac = s(1) * s(0) * c;
    return {x0, bac * bac * bac};
}

QuatJet QuatModel::generator(const std::string& name) const {
    auto it = gens_.find(name);
    if (it == gens_.end())
        throw std::out_of_range("no lift for generator " + name);
    return it->second;
}

QuatJet QuatModel::eval(const FreeWord& w) const {
    QuatJet out(Quat(1));
    for (const auto& s : w.syllables()) {
        QuatJet g = generator(s.gen);
        QuatJet base = s.exp > 0 ? g : g.inverse();
        for (long i = 0; i < (s.exp > 0 ? s.exp : -s.exp); ++i)
            out = out * base;
    }
    return out;
}

std::optional<unsigned> choose_signs(const QuatModel& m) {
    for (unsigned mask = 0; mask < 128; ++mask) {
        auto [x0, bac3] = m.normalizations(mask);
        if (x0 == Quat(1) && bac3 == Quat(1))
            return mask;
    }
    return std::nullopt;
}

DenseMat<AN> jacobian_closed_form(const CirclePoint& zbad, int k) {
    const auto& km = constant_matrices();
    Mat3<AN> r1 = rotation_R(zbad[0], zbad[1]), r2 = rotation_R(zbad[2], zbad[3]);
    Vec3<AN> e3{AN(0), AN(0), AN(1)};
    std::array<Vec3<AN>, 3> cols{r1 * e3, r1 * km.S1 * r2 * e3, km.S4.transpose() * e3};
    const std::size_t n = 3 * (k + 1);
    DenseMat<AN> j(n, std::vector<AN>(n, AN(0)));
    for (int c = 0; c < 3; ++c)
        for (int r = 0; r < 3; ++r)
            j[r][c] = cols[c][r] * Rational(1, 2);
    for (std::size_t i = 3; i < n; ++i)
        j[i][i] = AN(1);
    return j;
}

DenseMat<AN> jacobian_from_jets(const QuatModel& m) {
    const std::size_t n = m.arity();
    DenseMat<AN> j(n, std::vector<AN>(n, AN(0)));
    for (std::size_t b = 0; b < n / 3; ++b) {
        QuatJet x = m.generator("x" + std::to_string(b));
        for (std::size_t c = 0; c < n; ++c) {
            Vec3<AN> v = quat_psi(x.partial(c));
            for (int r = 0; r < 3; ++r)
                j[3 * b + r][c] = v[r];
        }
    }
    return j;
}

bool PurityReport::all_pure() const {
    for (bool b : pure)
        if (!b)
            return false;
    return true;
}

PurityReport purity(const QuatModel& m, const FreeWord& w) {
    QuatJet j = m.eval(w);
    PurityReport rep{w.to_string(), j.value(), {}};
    for (std::size_t i = 0; i < m.arity(); ++i)
        rep.pure.push_back(j.partial(i).is_pure());
    return rep;
}

nlohmann::json dense_to_json(const DenseMat<AN>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& x : row)
            r.push_back(x.to_string());
        rows.push_back(r);
    }
    return rows;
}

}  // namespace a5v
