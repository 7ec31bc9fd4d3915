#include "cforge/poly.hpp"

#include <algorithm>
#include <map>

namespace cforge {

namespace {

constexpr std::array<std::string_view, kIndetCount> kNames = {
    "d", "l", "m", "x", "y", "n", "s", "t"};

} // namespace

std::string_view indet_name(Indet v) { return kNames[size_t(v)]; }

std::optional<Indet> indet_of_name(std::string_view name) {
    for (size_t i = 0; i < kIndetCount; ++i)
        if (kNames[i] == name) return Indet(i);
    return std::nullopt;
}

unsigned monomial_degree(const Monomial& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

bool monomial_before(const Monomial& a, const Monomial& b) {
    unsigned da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da > db;
    return a > b;
}

Poly Poly::constant(Rational c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({kUnitMonomial, std::move(c)});
    return p;
}

Poly Poly::var(Indet v) {
    Monomial m{};
    m[size_t(v)] = 1;
    Poly p;
    p.terms_.push_back({m, Rational(1)});
    return p;
}

Poly Poly::monomial(Rational c, const Monomial& m) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == kUnitMonomial);
}

Rational Poly::constant_value() const {
    for (const auto& t : terms_)
        if (t.mono == kUnitMonomial) return t.coeff;
    return Rational(0);
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

// Merge of two canonical term lists.
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a,
                              const std::vector<Poly::Term>& b, bool negate_b) {
    std::vector<Poly::Term> out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && monomial_before(a[i].mono, b[j].mono))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || monomial_before(b[j].mono, a[i].mono)) {
            out.push_back(b[j]);
            if (negate_b) out.back().coeff = -out.back().coeff;
            ++j;
        } else {
            Rational c = negate_b ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
            if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

} // namespace

Poly& Poly::operator+=(const Poly& o) {
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::map<Monomial, Rational> acc;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            Monomial m;
            for (size_t k = 0; k < kIndetCount; ++k)
                m[k] = uint16_t(ta.mono[k] + tb.mono[k]);
            auto [it, fresh] = acc.try_emplace(m, ta.coeff * tb.coeff);
            if (!fresh) it->second += ta.coeff * tb.coeff;
        }
    }
    std::vector<Poly::Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (!c.is_zero()) terms.push_back({m, std::move(c)});
    std::sort(terms.begin(), terms.end(),
              [](const Poly::Term& x, const Poly::Term& y) { return monomial_before(x.mono, y.mono); });
    Poly r;
    r.terms_ = std::move(terms);
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly Poly::scaled(const Rational& c) const {
    if (c.is_zero()) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::pow(unsigned k) const {
    Poly r = Poly::constant(1);
    Poly base = *this;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

bool Poly::contains(Indet v) const {
    for (const auto& t : terms_)
        if (t.mono[size_t(v)] != 0) return true;
    return false;
}

std::vector<Indet> Poly::vars() const {
    std::vector<Indet> out;
    for (size_t i = 0; i < kIndetCount; ++i)
        if (contains(Indet(i))) out.push_back(Indet(i));
    return out;
}

int Poly::degree(Indet v) const {
    if (terms_.empty()) return -1;
    int deg = 0;
    for (const auto& t : terms_) deg = std::max(deg, int(t.mono[size_t(v)]));
    return deg;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    // Leading term has maximal total degree by the graded order.
    return int(monomial_degree(terms_[0].mono));
}

Poly Poly::substitute(const std::vector<std::pair<Indet, Poly>>& bindings) const {
    if (bindings.empty()) return *this;
    bool bound[kIndetCount] = {};
    std::array<const Poly*, kIndetCount> target{};
    for (const auto& [v, p] : bindings) {
        bound[size_t(v)] = true;
        target[size_t(v)] = &p;
    }
    Poly result;
    for (const auto& t : terms_) {
        Monomial untouched{};
        Poly factor = Poly::constant(t.coeff);
        for (size_t k = 0; k < kIndetCount; ++k) {
            if (t.mono[k] == 0) continue;
            if (bound[k])
                factor *= target[k]->pow(t.mono[k]);
            else
                untouched[k] = t.mono[k];
        }
        result += factor * Poly::monomial(Rational(1), untouched);
    }
    return result;
}

Poly Poly::substitute(Indet v, const Poly& p) const {
    return substitute(std::vector<std::pair<Indet, Poly>>{{v, p}});
}

Poly Poly::coeff_extract(Indet v, unsigned k) const {
    Poly out;
    for (const auto& t : terms_) {
        if (t.mono[size_t(v)] != k) continue;
        Monomial m = t.mono;
        m[size_t(v)] = 0;
        out += Poly::monomial(t.coeff, m);
    }
    return out;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (c.sign() < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c.sign() < 0 ? " - " : " + ";
            c = c.abs();
        }
        first = false;
        std::string vars;
        for (size_t k = 0; k < kIndetCount; ++k) {
            unsigned e = t.mono[k];
            if (!e) continue;
            if (!vars.empty()) vars += "*";
            vars += std::string(kNames[k]);
            if (e > 1) vars += "^" + std::to_string(e);
        }
        if (vars.empty()) {
            out += c.str();
        } else {
            if (!c.is_one()) out += c.str() + "*";
            out += vars;
        }
    }
    return out;
}

} // namespace cforge
