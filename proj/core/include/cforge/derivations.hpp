#pragma once

#include "cforge/conformal_map.hpp"

namespace cforge {

struct AbcdParams {
    Rational A, B, C, D;
    std::string str() const {
        return A.str() + "," + B.str() + "," + C.str() + "," + D.str();
    }
    bool operator==(const AbcdParams&) const = default;
};

// Which derivation condition a space was solved for.
struct PredicateTag {
    enum class Kind { cder, ctder, tc, tqc, ztder, abcd, phipsi, gctder_pair, inner, derived };

    Kind kind = Kind::cder;
    Parity parity = Parity::even;
    AbcdParams abcd{Rational(0), Rational(0), Rational(0), Rational(0)};
    std::shared_ptr<const ModuleHom> Phi, Psi; // phipsi only
    std::string label;

    static PredicateTag make_cder(Parity p) { return {Kind::cder, p, {}, {}, {}, "cder"}; }
    static PredicateTag make_ctder(Parity p) { return {Kind::ctder, p, {}, {}, {}, "ctder"}; }
    static PredicateTag make_tc(Parity p) { return {Kind::tc, p, {}, {}, {}, "tc"}; }
    static PredicateTag make_tqc(Parity p) { return {Kind::tqc, p, {}, {}, {}, "tqc"}; }
    static PredicateTag make_ztder(Parity p) { return {Kind::ztder, p, {}, {}, {}, "ztder"}; }
    static PredicateTag make_abcd(Parity p, AbcdParams params) {
        PredicateTag t{Kind::abcd, p, std::move(params), {}, {}, ""};
        t.label = "abcd:" + t.abcd.str();
        return t;
    }
    static PredicateTag make_phipsi(Parity p, std::shared_ptr<const ModuleHom> Phi,
                                    std::shared_ptr<const ModuleHom> Psi, std::string names) {
        return {Kind::phipsi, p, {}, std::move(Phi), std::move(Psi), "phipsi:" + names};
    }
    static PredicateTag make_gctder(Parity p) {
        return {Kind::gctder_pair, p, {}, {}, {}, "gctder"};
    }
};

// Q-basis of conformal maps within a total-degree window, together with
// the predicate and bound that produced it. Bases are canonical (RREF of
// ansatz-coefficient vectors), so equal spaces print identically.
struct MapSpace {
    SigPtr sig;
    std::string algebra_name;
    PredicateTag tag;
    unsigned degree_bound = 0;
    Indet var = Indet::x;
    std::vector<ConformalMap> basis;

    std::size_t dim() const { return basis.size(); }
};

struct PairSpace {
    SigPtr sig;
    std::string algebra_name;
    PredicateTag tag;
    unsigned degree_bound = 0;
    Indet var = Indet::x;
    std::vector<std::pair<ConformalMap, ConformalMap>> basis; // (phi, tau)

    std::size_t dim() const { return basis.size(); }
};

// Unknown order for the degree-bounded ansatz: (source generator, target
// generator, d-exponent, x-exponent), lexicographic; only parity-compatible
// generator pairs and d_exp + x_exp <= bound enter.
struct AnsatzLayout {
    struct Slot {
        std::size_t src, tgt;
        unsigned dexp, xexp;
    };

    SigPtr sig;
    Parity parity = Parity::even;
    unsigned bound = 0;
    Indet var = Indet::x;
    std::vector<Slot> slots;

    static AnsatzLayout make(SigPtr sig, Parity parity, unsigned bound, Indet var = Indet::x);
    std::size_t size() const { return slots.size(); }
    ConformalMap unit_map(std::size_t k) const;
    ConformalMap from_vec(const DenseVec& v) const;
    // nullopt when the map does not fit the window (degree or variables).
    std::optional<DenseVec> to_vec(const ConformalMap& m) const;
};

// --- Predicate checks (identities in the bracket variables, the map
// variable and any family parameters; map parameters are treated as
// transcendental scalars).

// Leibniz rule for the lambda-bracket.
CheckReport check_cder(const Algebra& a, const ConformalMap& phi);
// Triple Leibniz rule over the double bracket.
CheckReport check_ctder(const Algebra& a, const ConformalMap& phi);
// One-slot (triple centroid) condition.
CheckReport check_tc(const Algebra& a, const ConformalMap& phi);
// Slide-across (triple quasicentroid) condition.
CheckReport check_tqc(const Algebra& a, const ConformalMap& phi);

struct ZtderReport {
    CheckReport image_vanishes;     // phi_x([[a b] c]) = 0
    CheckReport first_slot_vanishes; // [[phi_x(a) b] c] = 0
    bool pass() const { return image_vanishes.pass() && first_slot_vanishes.pass(); }
};
ZtderReport check_ztder(const Algebra& a, const ConformalMap& phi);

// Four-scalar weighting of the triple rule.
CheckReport check_abcd(const Algebra& a, const ConformalMap& phi, const AbcdParams& p);

struct GctderReport {
    CheckReport pair_condition; // phi against the relating map tau
    CheckReport tau_is_ctder;
    bool pass() const { return pair_condition.pass() && tau_is_ctder.pass(); }
};
GctderReport check_gctder(const Algebra& a, const ConformalMap& phi, const ConformalMap& tau);

// Triple rule twisted by two certified automorphisms.
CheckReport check_phipsi(const Algebra& a, const ConformalMap& phi, const ModuleHom& Phi,
                         const ModuleHom& Psi);

// [phi_x ad e_i]_y = ad(delta_x(e_i))_y per generator.
CheckReport check_intertwiner(const Algebra& a, const ConformalMap& phi,
                              const ConformalMap& delta);

// --- Solver and space algebra.

MapSpace solve_space(const Algebra& a, const PredicateTag& tag, unsigned degree_bound);
PairSpace solve_gctder_space(const Algebra& a, Parity parity, unsigned degree_bound);

bool space_equal(const MapSpace& s, const MapSpace& t);
MapSpace space_intersect(const MapSpace& s, const MapSpace& t);

// Span of ad(d^k e_i) for |e_i| = parity, k <= bound, keeping the maps
// whose images fit the ansatz window; canonicalized like solver output.
MapSpace inner_space(const Algebra& a, Parity parity, unsigned degree_bound);

// {phi in span(S) : [phi_x psi]_y = 0 for every psi in T's basis}.
MapSpace centralizer_in(const MapSpace& s, const MapSpace& t, Indet xv = Indet::x,
                        Indet yv = Indet::y);

// Verifies that each term of the weighted triple rule (and of the Leibniz
// rule) scales by the same factor when a slot is multiplied by d, per
// term, so the conditions are linear over the scalars and generator-level
// checks extend to the whole module.
struct SufficiencyReport {
    std::size_t items_checked = 0;
    std::vector<std::string> failures;
    bool pass() const { return failures.empty(); }
};
SufficiencyReport verify_generator_sufficiency(const Algebra& a, unsigned probe_bound = 1);

} // namespace cforge
