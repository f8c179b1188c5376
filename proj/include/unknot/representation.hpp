#pragma once
// SU(2) representations as lists of unit quaternions (a, b, c, d), plus the
// gauge normalization that removes the global-conjugation symmetry:
// conjugate so that c_1 = d_1 = 0, b_1 >= 0, and the first generator whose
// (c, d)-part can still move satisfies d_m = 0, c_m >= 0.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace unknot {

using Quat = std::array<double, 4>;  // (a, b, c, d) = a + bi + cj + dk

inline Quat qmul(const Quat& x, const Quat& y) {
    return {x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
            x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
            x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
}

inline Quat qconj(const Quat& x) { return {x[0], -x[1], -x[2], -x[3]}; }

inline double qnorm(const Quat& x) {
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
}

inline Quat qscale(const Quat& x, double s) {
    return {x[0] * s, x[1] * s, x[2] * s, x[3] * s};
}

// Rescale to unit norm (the projection step of the solver's refinement).
inline Quat qnormalize(const Quat& x) {
    double n = qnorm(x);
    if (n == 0.0) throw std::domain_error("cannot normalize zero quaternion");
    return qscale(x, 1.0 / n);
}

struct Representation {
    std::vector<Quat> tuples;  // tuples[k-1] is the image of generator k

    int n() const { return int(tuples.size()); }

    // Flat coordinate vector indexed by Var::id() = 4*(gen-1)+comp.
    std::vector<double> flatten() const {
        std::vector<double> v;
        v.reserve(4 * tuples.size());
        for (const Quat& q : tuples)
            for (double x : q) v.push_back(x);
        return v;
    }

    static Representation from_flat(const std::vector<double>& v) {
        if (v.size() % 4 != 0)
            throw std::invalid_argument(
                "representation vector length must be a multiple of 4");
        Representation r;
        for (size_t i = 0; i < v.size(); i += 4)
            r.tuples.push_back({v[i], v[i + 1], v[i + 2], v[i + 3]});
        return r;
    }
};

// Simultaneous conjugation q_k -> u q_k u* by a unit quaternion u.
inline Representation conjugate(const Representation& rep, const Quat& u) {
    Representation out;
    Quat uc = qconj(u);
    out.tuples.reserve(rep.tuples.size());
    for (const Quat& q : rep.tuples) out.tuples.push_back(qmul(qmul(u, q), uc));
    return out;
}

namespace detail {

// Unit quaternion whose conjugation rotates unit vector w = (wx, wy, wz)
// onto the +x axis.
inline Quat rotation_to_x(double wx, double wy, double wz) {
    // rotate about axis = w x e_x, by the angle between w and e_x
    double ax = 0.0, ay = wz, az = -wy;  // w x e_x
    double an = std::sqrt(ay * ay + az * az);
    if (an < 1e-300) {
        if (wx > 0) return {1, 0, 0, 0};  // already +x
        return {0, 0, 1, 0};              // -x: half-turn about y
    }
    double cos_t = wx;  // w . e_x for unit w
    if (cos_t > 1) cos_t = 1;
    if (cos_t < -1) cos_t = -1;
    double half = 0.5 * std::acos(cos_t);
    double s = std::sin(half) / an;
    return {std::cos(half), ax * s, ay * s, az * s};
}

// Unit quaternion for a rotation about the x axis by angle alpha.
inline Quat rotation_about_x(double alpha) {
    return {std::cos(alpha / 2), std::sin(alpha / 2), 0, 0};
}

}  // namespace detail

// Canonical conjugate of a representation. Two steps: rotate the first
// non-central generator's imaginary part onto +x (forcing c = d = 0,
// b >= 0 there, and in particular c_1 = d_1 = 0 since earlier generators
// are central); then spend the leftover x-axis rotation making the first
// generator with a nonzero (c, d)-part satisfy d = 0, c >= 0.
inline Representation gauge_normalize(const Representation& rep,
                                      double tol = 1e-12) {
    if (rep.tuples.empty())
        throw std::invalid_argument("gauge_normalize: empty representation");
    Representation r = rep;

    for (const Quat& q : r.tuples) {
        double b = q[1], c = q[2], d = q[3];
        double imag = std::sqrt(b * b + c * c + d * d);
        if (imag > tol) {
            r = conjugate(r, detail::rotation_to_x(b / imag, c / imag,
                                                   d / imag));
            break;
        }
    }
    for (const Quat& q : r.tuples) {
        double c = q[2], d = q[3];
        if (std::sqrt(c * c + d * d) > tol) {
            r = conjugate(r, detail::rotation_about_x(-std::atan2(d, c)));
            break;
        }
    }
    return r;
}

}  // namespace unknot
