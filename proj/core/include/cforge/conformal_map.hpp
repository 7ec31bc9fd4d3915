#pragma once

#include "cforge/algebra.hpp"

namespace cforge {

// Conformal linear map of one parity. `var` is the map's own formal
// variable; images may also carry extra formal parameters (families
// produced by the gc bracket carry the family parameter this way). The
// defining law phi_x(d a) = (d+x) phi_x(a) is enforced by apply(), not
// stored.
struct ConformalMap {
    SigPtr sig;
    Parity parity = Parity::even;
    Indet var = Indet::x;
    std::vector<Element> images;

    bool is_zero() const;
    bool operator==(const ConformalMap&) const = default;
};

// Validates parity support: image of e_i lives on generators of parity
// parity + |e_i|.
ConformalMap make_conformal_map(SigPtr sig, Parity parity, Indet var,
                                std::vector<Element> images);
ConformalMap zero_map(SigPtr sig, Parity parity, Indet var = Indet::x);

ConformalMap cmap_add(const ConformalMap& a, const ConformalMap& b);
ConformalMap cmap_sub(const ConformalMap& a, const ConformalMap& b);
ConformalMap cmap_scale(const ConformalMap& a, const Rational& c);
// The C[d]-module action on maps: (d phi)_x = -x phi_x.
ConformalMap cmap_partial(const ConformalMap& a);
// Rename the map's own variable (error if the new one is already used).
ConformalMap with_var(const ConformalMap& a, Indet new_var);
// Extra formal parameters: indeterminates other than d and the map var.
std::vector<Indet> cmap_params(const ConformalMap& a);

// phi_{at}(a): coordinates are shifted d -> d + at, image variables are
// evaluated at `at`. Other indeterminates in `a` are treated as scalars.
Element apply_at(const ConformalMap& phi, const Element& a, const Poly& at);
// Strict form: the variable must not already occur in the argument.
Element apply(const ConformalMap& phi, const Element& a, Indet at_var);

// ad a with images e_j -> [a var e_j]; a must be parity-homogeneous.
ConformalMap ad(const Algebra& alg, const Element& a, Indet var = Indet::x);

// [phi_x psi]_y with images phi_x(psi_{y-x} e_i) - (-1)^{|phi||psi|}
// psi_{y-x}(phi_x e_i); the result has variable y and parameter x.
ConformalMap gc_bracket(const ConformalMap& phi, const ConformalMap& psi, Indet xv, Indet yv);

// d-module homomorphism between algebras: f(p(d) e_i) = p(d) f(e_i).
struct ModuleHom {
    AlgebraPtr source, target;
    Parity parity = Parity::even;
    std::vector<Element> images; // coords over {d} in the target

    bool is_zero() const;
};

ModuleHom make_module_hom(AlgebraPtr source, AlgebraPtr target, Parity parity,
                          std::vector<Element> images);
ModuleHom identity_hom(const AlgebraPtr& alg);
ModuleHom zero_hom(AlgebraPtr source, AlgebraPtr target, Parity parity = Parity::even);

// The canonical maps of a direct sum; `part` must be the summand the
// injection/projection is taken for (0 = left, 1 = right).
ModuleHom sum_injection(const DirectSumResult& sum, const AlgebraPtr& part, int which);
ModuleHom sum_projection(const DirectSumResult& sum, const AlgebraPtr& part, int which);

ModuleHom hom_add(const ModuleHom& a, const ModuleHom& b);
ModuleHom hom_sub(const ModuleHom& a, const ModuleHom& b);
ModuleHom hom_scale(const ModuleHom& a, const Rational& c);
ModuleHom hom_compose(const ModuleHom& f, const ModuleHom& g); // f after g

Element hom_apply(const ModuleHom& f, const Element& a);

// Post-compose a conformal map with a module hom on the same algebra.
ConformalMap compose_hom_cmap(const ModuleHom& f, const ConformalMap& phi);

enum class HomKind { hom, antihom };

// Residual f([e_i l e_j]) -/+ [f(e_i) l f(e_j)] per generator pair.
CheckReport hom_check(const ModuleHom& f, HomKind kind);

struct AutomorphismCert {
    bool ok = false;
    std::string reason;
    Poly det;
    std::optional<ModuleHom> inverse;
};

// Even endo-hom with unit determinant over Q[d]; the certificate carries
// the inverse images.
AutomorphismCert is_automorphism(const ModuleHom& f);

} // namespace cforge
