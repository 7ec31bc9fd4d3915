#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cforge/rational.hpp"

namespace cforge {

// Fixed universe of commuting indeterminates. `d` is the module generator
// ∂; l, m, n are bracket variables (λ, μ, ν); x, y are conformal-map
// variables; s, t are spare formal parameters. Registration order is the
// enum order and fixes the monomial order.
enum class Indet : uint8_t { d = 0, l, m, x, y, n, s, t };

inline constexpr std::size_t kIndetCount = 8;

std::string_view indet_name(Indet v);
std::optional<Indet> indet_of_name(std::string_view name);

// Exponent vector over the registered indeterminates.
using Monomial = std::array<uint16_t, kIndetCount>;

inline constexpr Monomial kUnitMonomial{};

unsigned monomial_degree(const Monomial& m);

// Graded lexicographic: compare total degree first, then exponents in
// registration order. Returns true when a precedes b in descending
// canonical storage order (a is "larger").
bool monomial_before(const Monomial& a, const Monomial& b);

// Exact multivariate polynomial over Q. Terms are stored in descending
// graded-lex order with no zero coefficients, so operator== is structural
// equality of canonical forms.
class Poly {
public:
    struct Term {
        Monomial mono;
        Rational coeff;
        bool operator==(const Term&) const = default;
    };

    Poly() = default; // zero

    static Poly constant(Rational c);
    static Poly constant(long c) { return constant(Rational(c)); }
    static Poly var(Indet v);
    static Poly monomial(Rational c, const Monomial& m);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (coefficient of the unit monomial).
    Rational constant_value() const;

    const std::vector<Term>& terms() const { return terms_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);

    Poly scaled(const Rational& c) const;
    Poly pow(unsigned k) const;

    bool operator==(const Poly&) const = default;

    bool contains(Indet v) const;
    std::vector<Indet> vars() const;
    // Highest exponent of v, or -1 for the zero polynomial.
    int degree(Indet v) const;
    int total_degree() const;

    // Simultaneous substitution of the bound indeterminates.
    Poly substitute(const std::vector<std::pair<Indet, Poly>>& bindings) const;
    Poly substitute(Indet v, const Poly& p) const;

    // q_k in p = sum_k q_k v^k; the result does not contain v.
    Poly coeff_extract(Indet v, unsigned k) const;

    std::string str() const;

private:
    std::vector<Term> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }
inline Poly operator*(const Poly& p, const Rational& c) { return p.scaled(c); }

inline Poly pvar(Indet v) { return Poly::var(v); }

} // namespace cforge
