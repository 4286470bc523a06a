// Quaternions over exact rings, the double cover p: S^3 -> SO(3), lifts of
// the moduli matrices, and first-order jets of lifted words at t_bad.
//
// The product is the one with ij = -k (q1 * q2 equals the usual product
// q2 q1). With it, p(q) is the transpose of the usual rotation matrix of q,
// p(cos(t/2) + k sin(t/2)) = R(cos t, sin t), p is multiplicative and
// psi(q v q^-1) = p(q) psi(v) for pure v.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "a5v/linalg.hpp"
#include "a5v/moduli.hpp"
#include "a5v/symbolic.hpp"

namespace a5v {

template <class R>
class Quaternion {
public:
    Quaternion() : c_{R(0), R(0), R(0), R(0)} {}
    Quaternion(long r) : c_{R(r), R(0), R(0), R(0)} {}  // NOLINT
    Quaternion(R w, R x, R y, R z) : c_{std::move(w), std::move(x), std::move(y), std::move(z)} {}

    const R& w() const { return c_[0]; }
    const R& x() const { return c_[1]; }
    const R& y() const { return c_[2]; }
    const R& z() const { return c_[3]; }
    const R& operator[](int i) const { return c_[i]; }

    Quaternion conj() const { return {c_[0], -c_[1], -c_[2], -c_[3]}; }
    R norm2() const { return c_[0] * c_[0] + c_[1] * c_[1] + c_[2] * c_[2] + c_[3] * c_[3]; }
    Quaternion inverse() const {
        R n = norm2().inverse();
        Quaternion q = conj();
        for (auto& x : q.c_)
            x = x * n;
        return q;
    }
    bool is_pure() const { return c_[0] == R(0); }

    friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
        return {a.c_[0] + b.c_[0], a.c_[1] + b.c_[1], a.c_[2] + b.c_[2], a.c_[3] + b.c_[3]};
    }
    friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
        return {a.c_[0] - b.c_[0], a.c_[1] - b.c_[1], a.c_[2] - b.c_[2], a.c_[3] - b.c_[3]};
    }
    friend Quaternion operator-(const Quaternion& a) { return {-a.c_[0], -a.c_[1], -a.c_[2], -a.c_[3]}; }
    friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
        // usual product q p
        const auto& a = q.c_;
        const auto& b = p.c_;
        return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
    }
    friend Quaternion operator*(const R& s, const Quaternion& q) {
        return {s * q.c_[0], s * q.c_[1], s * q.c_[2], s * q.c_[3]};
    }
    friend bool operator==(const Quaternion& a, const Quaternion& b) {
        for (int i = 0; i < 4; ++i)
            if (!(a.c_[i] == b.c_[i]))
                return false;
        return true;
    }

    std::string to_string() const {
        static const char* unit[] = {"", "i", "j", "k"};
        std::string out;
        for (int i = 0; i < 4; ++i) {
            if (c_[i] == R(0))
                continue;
            std::ostringstream os;
            os << c_[i];
            if (!out.empty())
                out += " + ";
            out += i == 0 ? os.str() : "(" + os.str() + ")" + unit[i];
        }
        return out.empty() ? "0" : out;
    }

private:
    std::array<R, 4> c_;
};

using Quat = Quaternion<AN>;
using QuatJet = Jet<Quat>;

template <class R>
std::ostream& operator<<(std::ostream& os, const Quaternion<R>& q) {
    return os << q.to_string();
}

/// Throws std::invalid_argument unless norm2(q) = 1.
Mat3<AN> quat_p(const Quat& q);
Vec3<AN> quat_psi(const Quat& q);
Quat quat_from_vector(const Vec3<AN>& v);
/// q v q^-1 for pure v.
Quat conj_action(const Quat& q, const Quat& v);

/// sqrt(1 - b^2 - c^2 - d^2) + b i + c j + d k; the root may extend `tower`.
Quat phi_disk(const AN& b, const AN& c, const AN& d, Tower& tower);
/// Jet of phi_disk at (b, c, d) in slots first..first+2 of `arity`.
QuatJet phi_disk_jet(const AN& b, const AN& c, const AN& d, std::size_t first, std::size_t arity, Tower& tower);

/// Unit q with p(q) = m, first nonzero component positive. At most one
/// square root is adjoined to `tower`.
Quat lift_rotation(const Mat3<AN>& m, Tower& tower);

struct TPoint {
    std::array<AN, 3> cos, sin;            // full angle, in K
    std::array<AN, 3> half_cos, half_sin;  // t_i / 2
    std::vector<Vec3<AN>> disk;
    Tower tower;  // contains all of the above

    /// Checks unit circles, doubling identities and disk norms.
    void validate() const;
};

/// t_bad with k zero disk coordinates; half angles adjoined over K as
/// needed with c_i^2 = (1 + alpha_i)/2 and s_i = beta_i / (2 c_i).
TPoint make_t_bad(const CirclePoint& zbad, int k);

/// Constant lifts in the order A, B, S0, S1, S2, S3, S4.
inline constexpr std::array<const char*, 7> kLiftNames{"A", "B", "S0", "S1", "S2", "S3", "S4"};

class QuatModel {
public:
    /// Lifts the constants over the t_bad tower and fixes their signs.
    explicit QuatModel(const TPoint& t);

    const TPoint& t() const { return t_; }
    const Tower& tower() const { return t_.tower; }
    std::size_t arity() const { return 3 * (t_.disk.size() + 1); }
    const std::array<Quat, 7>& raw_lifts() const { return raw_; }
    const std::array<Quat, 7>& lifts() const { return lifts_; }
    /// Bit i set: lift i was negated.
    unsigned sign_mask() const { return mask_; }

    /// Generator jets: a, b, c, d, x0, ..., xk.
    QuatJet generator(const std::string& name) const;
    QuatJet eval(const FreeWord& w) const;

    /// Values of X0 and (BAC)^3 at t_bad under a given sign mask.
    std::pair<Quat, Quat> normalizations(unsigned mask) const;

private:
    QuatJet rotation_jet(int i) const;

    TPoint t_;
    std::array<Quat, 7> raw_;
    std::array<Quat, 7> lifts_;
    unsigned mask_ = 0;
    std::map<std::string, QuatJet> gens_;
};

/// First mask in 0..127 with X0(t_bad) = 1 and (BAC)^3(t_bad) = 1.
std::optional<unsigned> choose_signs(const QuatModel& m);

/// Block-diagonal [[M, 0], [0, I]] from the closed-form columns.
DenseMat<AN> jacobian_closed_form(const CirclePoint& zbad, int k);
/// The same matrix from jets: column i holds psi(d X_j / d t_i) in block j.
DenseMat<AN> jacobian_from_jets(const QuatModel& m);

struct PurityReport {
    std::string word;
    Quat value;
    std::vector<bool> pure;  // per partial
    bool all_pure() const;
};

PurityReport purity(const QuatModel& m, const FreeWord& w);

nlohmann::json dense_to_json(const DenseMat<AN>& m);

}  // namespace a5v
