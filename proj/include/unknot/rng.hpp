#pragma once
// Deterministic random sampling for witness search and statistical tests.
// All draws go through one explicit mapping from mt19937_64 output words so
// that a fixed seed yields the same sample stream on every standard library
// (distribution classes like std::normal_distribution are implementation
// defined and would break byte-stable verdicts).

#include <cmath>
#include <cstdint>
#include <random>

#include "unknot/representation.hpp"

namespace unknot {

class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1): top 53 bits of one engine word.
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [-1, 1).
    double uniform_pm() { return 2.0 * uniform() - 1.0; }

    // Standard normal via Marsaglia's polar method (log/sqrt only; no
    // trig, no cached second value, so the stream stays easy to audit).
    double gauss() {
        for (;;) {
            double u = uniform_pm(), v = uniform_pm();
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0)
                return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }

    // Uniform on the unit 3-sphere: four normals, normalized.
    Quat unit_quat() {
        for (;;) {
            Quat q{gauss(), gauss(), gauss(), gauss()};
            double n = qnorm(q);
            if (n > 1e-6) return qscale(q, 1.0 / n);
        }
    }

    // n independent uniform unit quaternions.
    Representation random_rep(int n) {
        Representation r;
        r.tuples.reserve(size_t(n));
        for (int k = 0; k < n; ++k) r.tuples.push_back(unit_quat());
        return r;
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace unknot
