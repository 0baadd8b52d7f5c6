#pragma once
// Shared example varieties for the test suites.

#include "coxskel/divisor.hpp"

namespace coxskel::examples {

inline std::vector<ZVec> zrows(std::vector<std::vector<long>> rows) {
    std::vector<ZVec> z;
    for (auto& r : rows) {
        ZVec v;
        for (long x : r) v.push_back(x);
        z.push_back(v);
    }
    return z;
}

inline ZVec zv(std::vector<long> v) {
    ZVec z;
    for (long x : v) z.push_back(x);
    return z;
}

/** P^n with rays e_1..e_n, -(e_1+..+e_n) and the class of every ray equal to 1. */
inline ToricData projective_space(std::size_t n) {
    std::vector<ZVec> rays;
    for (std::size_t i = 0; i < n; ++i) {
        ZVec e = zero_z(n);
        e[i] = 1;
        rays.push_back(e);
    }
    rays.push_back(ZVec(n, Int(-1)));
    std::vector<Cone> cones;
    for (std::size_t skip = 0; skip <= n; ++skip) {
        Cone c;
        for (std::size_t i = 0; i <= n; ++i)
            if (i != skip) c.push_back(i);
        cones.push_back(c);
    }
    return from_fan("P" + std::to_string(n), make_stacky(validate_fan(n, rays, cones)));
}

/** Hirzebruch surface H_a with rays (1,0),(0,1),(-1,a),(0,-1); classes in the basis deg x0, deg x3. */
inline ToricData hirzebruch(long a) {
    auto rays = zrows({{1, 0}, {0, 1}, {-1, a}, {0, -1}});
    return from_fan("H" + std::to_string(a), make_stacky(validate_fan(2, rays, {{0, 1}, {1, 2}, {2, 3}, {0, 3}})), {0, 3});
}

/** P(1,1,3) with rays (1,0),(-1,3),(0,-1). */
inline ToricData p113() {
    auto rays = zrows({{1, 0}, {-1, 3}, {0, -1}});
    return from_fan("P113", make_stacky(validate_fan(2, rays, {{0, 1}, {1, 2}, {0, 2}})));
}

/** The Atiyah flop in degree-matrix mode. */
inline ToricData flop() { return from_degrees("flop", zrows({{1}, {1}, {-1}, {-1}})); }

/** Y_+ as a fan: the conifold cone split along one diagonal. */
inline ToricData flop_fan() {
    auto rays = zrows({{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}});
    return from_fan("flop-fan", make_stacky(validate_fan(3, rays, {{0, 1, 2}, {0, 2, 3}})));
}

/** Blow-up of P^3 at two torus-fixed points, degree-matrix mode. */
inline ToricData bl2p3() {
    // x0 (1,0,1), x1 (1,0,0), x2 (1,0,0), x3 (1,1,0), x4 (0,1,0), x5 (0,0,1)
    return from_degrees("Bl2P3", zrows({{1, 0, 1}, {1, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}}));
}

}  // namespace coxskel::examples
