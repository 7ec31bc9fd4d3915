#pragma once

#include <random>
#include <vector>

#include "cforge/algebra.hpp"

namespace testutil {

using namespace cforge;

struct Rng {
    std::mt19937_64 eng{0xC0FFEE5EEDULL};

    int irange(int lo, int hi) { // inclusive
        std::uniform_int_distribution<int> dist(lo, hi);
        return dist(eng);
    }

    Rational rat() {
        int num = irange(-5, 5);
        int den = irange(1, 4);
        return Rational(num, den);
    }
};

inline Poly random_poly(Rng& rng, const std::vector<Indet>& vars, int max_terms, int max_deg) {
    Poly p;
    int terms = rng.irange(0, max_terms);
    for (int t = 0; t < terms; ++t) {
        Monomial m{};
        int budget = max_deg;
        for (Indet v : vars) {
            int e = rng.irange(0, budget);
            m[size_t(v)] = uint16_t(e);
            budget -= e;
        }
        p += Poly::monomial(rng.rat(), m);
    }
    return p;
}

inline Element random_element(Rng& rng, const Algebra& a, int max_deg) {
    Element e = zero_element(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        e.coords[i] = random_poly(rng, {Indet::d}, 3, max_deg);
    return e;
}

inline Element random_homogeneous(Rng& rng, const Algebra& a, Parity p, int max_deg) {
    Element e = zero_element(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        if (a.sig().parity(i) == p) e.coords[i] = random_poly(rng, {Indet::d}, 3, max_deg);
    return e;
}

} // namespace testutil
