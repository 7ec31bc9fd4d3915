#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cforge/errors.hpp"
#include "cforge/linsys.hpp"
#include "cforge/poly.hpp"

namespace cforge {

enum class Parity : uint8_t { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return Parity(uint8_t(a) ^ uint8_t(b));
}

// (-1)^{|a||b|}: -1 exactly when both arguments are odd.
inline int sign_factor(Parity a, Parity b) {
    return (a == Parity::odd && b == Parity::odd) ? -1 : 1;
}

std::string_view parity_name(Parity p);
std::optional<Parity> parity_of_name(std::string_view name);

struct Generator {
    std::string name;
    Parity parity;
    bool operator==(const Generator&) const = default;
};

class Signature {
public:
    explicit Signature(std::vector<Generator> gens);

    std::size_t rank() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_[i]; }
    Parity parity(std::size_t i) const { return gens_[i].parity; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    bool operator==(const Signature&) const = default;

private:
    std::vector<Generator> gens_;
};

using SigPtr = std::shared_ptr<const Signature>;

// Generator-indexed vector of coefficient polynomials. Coordinates are
// polynomials in d for plain elements; bracket values and images extend
// the coordinate ring by formal variables.
struct Element {
    std::vector<Poly> coords;

    bool is_zero() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element operator-() const;

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }

    bool operator==(const Element&) const = default;
};

Element zero_element(std::size_t rank);
Element scale(const Element& e, const Poly& p);
Element scale(const Element& e, const Rational& c);
Element substitute(const Element& e, Indet v, const Poly& p);
Element coeff_extract(const Element& e, Indet v, unsigned k);
bool contains(const Element& e, Indet v);
std::vector<Indet> vars_of(const Element& e);
int coord_total_degree(const Element& e);

std::string element_str(const Signature& sig, const Element& e);

// Parity of a homogeneous element; zero reports even, mixed reports nullopt.
std::optional<Parity> homogeneous_parity(const Signature& sig, const Element& e);
Element parity_part(const Signature& sig, const Element& e, Parity p);

struct Violation {
    std::string where;
    Element residual;
    std::string text; // printed canonical residual
};

struct CheckReport {
    std::string check;
    std::size_t items_checked = 0;
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

// Degree-bounded basis of a subspace of elements (coords over {d}).
struct SubspaceBasis {
    std::vector<Element> vectors;
    unsigned degree_bound = 0;
};

struct BracketSpec {
    std::size_t i, j;
    Element value; // coords over {d, l}
};

// Finite Lie conformal superalgebra presented by generator brackets.
// The stored table is complete: unspecified (j,i) entries are filled from
// (i,j) by the skew-symmetry substitution at construction time; pairs with
// neither orientation given are zero. Construction validates structure
// only (parity consistency, conflicting duplicates), not the axioms -- use
// check_skew / check_jacobi for those.
class Algebra {
public:
    static Algebra build(std::string name, SigPtr sig, const std::vector<BracketSpec>& specs);

    const std::string& name() const { return name_; }
    const Signature& sig() const { return *sig_; }
    const SigPtr& sig_ptr() const { return sig_; }
    std::size_t rank() const { return sig_->rank(); }

    Element gen(std::size_t i) const;
    // The stored [e_i l e_j], coords over {d, l}.
    const Element& gen_bracket(std::size_t i, std::size_t j) const { return table_[i][j]; }

    // [a var b] extended by sesquilinearity:
    // [p(d)e_i var q(d)e_j] = p(-var) q(d+var) [e_i var e_j].
    // var must not occur in a or b; other formal parameters ride along.
    Element bracket(const Element& a, const Element& b, Indet var) const;

    // [a_{at} b] evaluated via a fresh bracket variable.
    Element bracket_at(const Element& a, const Element& b, const Poly& at, Indet fresh) const;

    // n! times the l^n coefficient of the bracket.
    Element n_product(const Element& a, const Element& b, unsigned n) const;

    bool operator==(const Algebra& o) const {
        return *sig_ == *o.sig_ && table_ == o.table_;
    }

private:
    Algebra() = default;
    std::string name_;
    SigPtr sig_;
    std::vector<std::vector<Element>> table_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

// Axiom checks over all generator pairs / triples. Generator-level checks
// extend to the whole module: both sides of each axiom scale the same way
// when a slot is multiplied by d (sesquilinearity) and the axioms are
// bilinear; the randomized cross-check on full elements lives in the tests.
CheckReport check_skew(const Algebra& a);
CheckReport check_jacobi(const Algebra& a);

// Named builders. Every returned algebra has been validated against
// check_skew and check_jacobi (construction error otherwise).
Algebra make_neveu_schwarz();
Algebra make_example22();
Algebra make_virasoro();
Algebra make_abelian(std::vector<Generator> gens);
Algebra make_abelian(std::size_t n_even_gens);

// Current algebra over a finite-dimensional Lie superalgebra given by
// structure constants: brackets[{i,j}] (i <= j) lists the coefficients of
// [b_i, b_j] in the basis. Super skew-symmetry completes the rest; super
// Jacobi is verified on construction.
struct LieData {
    std::vector<Generator> basis;
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<Rational>>> brackets;
};
Algebra make_current(std::string name, const LieData& lie);

Algebra make_cur_abelian1();
Algebra make_cur_2dim();
Algebra make_cur_sl2();

// Lookup by name: neveu_schwarz | ns | example22 | virasoro | abelian:N |
// cur_abelian1 | cur_2dim | cur_sl2.
Algebra build_named(const std::string& name);

struct DirectSumResult {
    AlgebraPtr algebra;
    std::size_t left_rank;
};

// Concatenated signature, componentwise brackets, zero cross brackets.
// Colliding generator names are resolved by suffixing "#1"/"#2".
DirectSumResult direct_sum(const Algebra& a, const Algebra& b);

// Basis of {a : deg_d(a) <= bound and [a l e_j] = 0 for all generators}.
// Generator-level vanishing suffices by sesquilinearity. The bound is an
// explicit parameter; the center itself is degree-unbounded.
SubspaceBasis center(const Algebra& a, unsigned degree_bound);

// Coefficient vector of an element within the d-degree window, gen-major.
std::optional<DenseVec> element_to_vec(const Element& e, std::size_t rank, unsigned degree_bound);
Element element_from_vec(const DenseVec& v, std::size_t rank, unsigned degree_bound);

} // namespace cforge
