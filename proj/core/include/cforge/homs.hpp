#pragma once

#include "cforge/conformal_map.hpp"

namespace cforge {

// f([[e_i l e_j]_{l+m} e_k]) = [[f(e_i) l f(e_j)]_{l+m} f(e_k)] per
// generator triple (the double-bracket form; by skew-symmetry it is
// equivalent to the nested form).
CheckReport check_triple_hom(const ModuleHom& f);

// [(f+delta)(e_i) l (f-delta)(e_j)] = 0 per generator pair.
CheckReport check_orthogonal_images(const ModuleHom& f, const ModuleHom& delta);

// f([e_i l e_j]) = [delta(e_i) l f(e_j)] per generator pair.
CheckReport check_hom_intertwiner(const ModuleHom& f, const ModuleHom& delta);

struct DecomposeResult {
    ModuleHom plus;  // (f + delta)/2
    ModuleHom minus; // (f - delta)/2
    CheckReport plus_is_hom;
    CheckReport minus_is_antihom;
    CheckReport orthogonal;
    bool sum_exact = false; // plus + minus == f
    // What this verification cannot see: the classification behind the
    // split assumes the enveloping algebra of the image is centerless and
    // splits into indecomposable ideals, which is not decidable here.
    std::string unchecked_hypothesis;
    bool pass() const {
        return plus_is_hom.pass() && minus_is_antihom.pass() && orthogonal.pass() && sum_exact;
    }
};

// Splits a triple homomorphism along a caller-supplied candidate delta and
// reports whether the halves are a homomorphism / anti-homomorphism with
// orthogonal images. Negative findings are report content, not errors.
DecomposeResult decompose_triple_hom(const ModuleHom& f, const ModuleHom& delta);

// Bounded-degree span growth: closure of the seed under d and all
// n-products, truncated to coordinates of d-degree <= degree_bound.
// Products that leave the window are dropped, so this is an
// inner approximation suitable for instance-level ideal tests only.
SubspaceBasis span_closure(const Algebra& alg, const std::vector<Element>& seed,
                           unsigned degree_bound, unsigned max_iters = 16);

bool basis_contains(const SubspaceBasis& basis, const Element& e, std::size_t rank);

} // namespace cforge
