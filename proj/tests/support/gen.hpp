#pragma once

// Hand-rolled generators for property tests. Fixed seeds keep failures
// reproducible; the failing draw is printed by the caller.

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "swipt/model.hpp"

namespace gen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

    // theta in [0.1, 0.9], P0 in [1, 1000], distances in [0.5, 2.5], noises in [0.05, 2]
    swipt::SystemParams params() {
        swipt::SystemParams p;
        p.p0 = log_uniform(1, 1000);
        p.eta = uniform(0.2, 1.0);
        p.theta = uniform(0.1, 0.9);
        p.alpha = uniform(2.0, 4.0);
        p.d0 = uniform(0.5, 2.5);
        p.d1 = uniform(0.5, 2.5);
        p.d2 = uniform(0.5, 2.5);
        p.n0a = uniform(0.05, 2);
        p.n0c = uniform(0.05, 2);
        p.n1a = uniform(0.05, 2);
        p.n1c = uniform(0.05, 2);
        p.n2a = uniform(0.05, 2);
        p.n2c = uniform(0.05, 2);
        return p;
    }

private:
    std::mt19937_64 rng_;
};

inline std::string describe(const swipt::SystemParams& p) {
    std::ostringstream o;
    o.precision(17);
    o << "p0=" << p.p0 << " eta=" << p.eta << " theta=" << p.theta << " alpha=" << p.alpha << " d=(" << p.d0 << ","
      << p.d1 << "," << p.d2 << ") n=(" << p.n0a << "," << p.n0c << "," << p.n1a << "," << p.n1c << "," << p.n2a
      << "," << p.n2c << ")";
    return o.str();
}

}  // namespace gen
