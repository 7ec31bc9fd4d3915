#include "cforge/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cforge {

std::string_view parity_name(Parity p) { return p == Parity::even ? "even" : "odd"; }

std::optional<Parity> parity_of_name(std::string_view name) {
    if (name == "even") return Parity::even;
    if (name == "odd") return Parity::odd;
    return std::nullopt;
}

Signature::Signature(std::vector<Generator> gens) : gens_(std::move(gens)) {
    if (gens_.empty()) throw AlgebraError("signature needs at least one generator");
    std::set<std::string> seen;
    for (const auto& g : gens_) {
        if (g.name.empty()) throw AlgebraError("empty generator name");
        if (!seen.insert(g.name).second)
            throw AlgebraError("duplicate generator name '" + g.name + "'");
        if (indet_of_name(g.name))
            throw AlgebraError("generator name '" + g.name + "' collides with an indeterminate");
    }
}

std::optional<std::size_t> Signature::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return i;
    return std::nullopt;
}

bool Element::is_zero() const {
    for (const auto& p : coords)
        if (!p.is_zero()) return false;
    return true;
}

Element& Element::operator+=(const Element& o) {
    if (coords.size() != o.coords.size()) throw Error("element rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
}

Element& Element::operator-=(const Element& o) {
    if (coords.size() != o.coords.size()) throw Error("element rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& p : r.coords) p = -p;
    return r;
}

Element zero_element(std::size_t rank) {
    Element e;
    e.coords.assign(rank, Poly());
    return e;
}

Element scale(const Element& e, const Poly& p) {
    Element r = e;
    for (auto& c : r.coords) c *= p;
    return r;
}

Element scale(const Element& e, const Rational& c) {
    Element r = e;
    for (auto& q : r.coords) q = q.scaled(c);
    return r;
}

Element substitute(const Element& e, Indet v, const Poly& p) {
    Element r = e;
    for (auto& c : r.coords) c = c.substitute(v, p);
    return r;
}

Element coeff_extract(const Element& e, Indet v, unsigned k) {
    Element r = e;
    for (auto& c : r.coords) c = c.coeff_extract(v, k);
    return r;
}

bool contains(const Element& e, Indet v) {
    for (const auto& c : e.coords)
        if (c.contains(v)) return true;
    return false;
}

std::vector<Indet> vars_of(const Element& e) {
    std::vector<Indet> out;
    for (std::size_t i = 0; i < kIndetCount; ++i)
        if (contains(e, Indet(i))) out.push_back(Indet(i));
    return out;
}

int coord_total_degree(const Element& e) {
    int deg = -1;
    for (const auto& c : e.coords) deg = std::max(deg, c.total_degree());
    return deg;
}

std::string element_str(const Signature& sig, const Element& e) {
    std::string out;
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
        if (e.coords[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + e.coords[i].str() + ")*" + sig.gen(i).name;
    }
    return out.empty() ? "0" : out;
}

std::optional<Parity> homogeneous_parity(const Signature& sig, const Element& e) {
    std::optional<Parity> p;
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
        if (e.coords[i].is_zero()) continue;
        if (!p)
            p = sig.parity(i);
        else if (*p != sig.parity(i))
            return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::even);
}

Element parity_part(const Signature& sig, const Element& e, Parity p) {
    Element r = e;
    for (std::size_t i = 0; i < r.coords.size(); ++i)
        if (sig.parity(i) != p) r.coords[i] = Poly();
    return r;
}

namespace {

// [e_j l e_i] obtained from [e_i l e_j] by the skew-symmetry substitution
// l -> -(d + l) and the sign rule.
Element skew_completion(const Element& value, Parity pi, Parity pj) {
    Poly minus_dl = -(pvar(Indet::d) + pvar(Indet::l));
    Element flipped = substitute(value, Indet::l, minus_dl);
    return scale(flipped, Rational(-sign_factor(pi, pj), 1));
}

void validate_bracket_value(const Signature& sig, std::size_t i, std::size_t j,
                            const Element& value) {
    if (value.coords.size() != sig.rank())
        throw AlgebraError("bracket value rank mismatch for pair (" + sig.gen(i).name + "," +
                           sig.gen(j).name + ")");
    Parity want = sig.parity(i) + sig.parity(j);
    for (std::size_t k = 0; k < value.coords.size(); ++k) {
        const Poly& c = value.coords[k];
        if (c.is_zero()) continue;
        for (Indet v : c.vars())
            if (v != Indet::d && v != Indet::l)
                throw AlgebraError("bracket for (" + sig.gen(i).name + "," + sig.gen(j).name +
                                   ") uses indeterminate '" + std::string(indet_name(v)) +
                                   "' (only d and l are allowed)");
        if (sig.parity(k) != want)
            throw AlgebraError("parity-inconsistent bracket: [" + sig.gen(i).name + " l " +
                               sig.gen(j).name + "] hits generator '" + sig.gen(k).name + "'");
    }
}

} // namespace

Algebra Algebra::build(std::string name, SigPtr sig, const std::vector<BracketSpec>& specs) {
    Algebra a;
    a.name_ = std::move(name);
    a.sig_ = std::move(sig);
    std::size_t rank = a.sig_->rank();

    std::vector<std::vector<std::optional<Element>>> given(rank);
    for (auto& row : given) row.resize(rank);
    for (const auto& spec : specs) {
        if (spec.i >= rank || spec.j >= rank) throw AlgebraError("bracket generator out of range");
        validate_bracket_value(*a.sig_, spec.i, spec.j, spec.value);
        if (given[spec.i][spec.j])
            throw AlgebraError("duplicate bracket for pair (" + a.sig_->gen(spec.i).name + "," +
                               a.sig_->gen(spec.j).name + ")");
        given[spec.i][spec.j] = spec.value;
    }
    // If both orientations were supplied they must agree under skew-symmetry.
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = i + 1; j < rank; ++j) {
            if (given[i][j] && given[j][i]) {
                Element expected =
                    skew_completion(*given[i][j], a.sig_->parity(i), a.sig_->parity(j));
                if (!(expected == *given[j][i]))
                    throw AlgebraError("conflicting brackets for pair (" + a.sig_->gen(j).name +
                                       "," + a.sig_->gen(i).name +
                                       "): value disagrees with skew-symmetry completion of (" +
                                       a.sig_->gen(i).name + "," + a.sig_->gen(j).name + ")");
            }
        }
    }
    a.table_.assign(rank, std::vector<Element>(rank, zero_element(rank)));
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j)
            if (given[i][j]) a.table_[i][j] = *given[i][j];
    for (std::size_t i = 0; i < rank; ++i) {
        for (std::size_t j = 0; j < rank; ++j) {
            if (i == j || given[i][j] || !given[j][i]) continue;
            a.table_[i][j] = skew_completion(*given[j][i], a.sig_->parity(j), a.sig_->parity(i));
        }
    }
    return a;
}

Element Algebra::gen(std::size_t i) const {
    Element e = zero_element(rank());
    e.coords[i] = Poly::constant(1);
    return e;
}

Element Algebra::bracket(const Element& a, const Element& b, Indet var) const {
    if (var == Indet::d) throw VariableCollision("bracket variable cannot be d");
    if (contains(a, var) || contains(b, var))
        throw VariableCollision("bracket variable '" + std::string(indet_name(var)) +
                                "' already occurs in an argument");
    if (a.coords.size() != rank() || b.coords.size() != rank())
        throw Error("element does not belong to algebra '" + name_ + "'");

    Poly xv = pvar(var);
    Poly d_plus_xv = pvar(Indet::d) + xv;
    Element result = zero_element(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a.coords[i].is_zero()) continue;
        Poly pa = a.coords[i].substitute(Indet::d, -xv);
        for (std::size_t j = 0; j < rank(); ++j) {
            if (b.coords[j].is_zero()) continue;
            const Element& base = table_[i][j];
            if (base.is_zero()) continue;
            Poly pb = b.coords[j].substitute(Indet::d, d_plus_xv);
            Element term = var == Indet::l ? base : substitute(base, Indet::l, xv);
            result += scale(term, pa * pb);
        }
    }
    return result;
}

Element Algebra::bracket_at(const Element& a, const Element& b, const Poly& at,
                            Indet fresh) const {
    if (at.contains(fresh))
        throw VariableCollision("evaluation point contains the fresh bracket variable");
    Element raw = bracket(a, b, fresh);
    return substitute(raw, fresh, at);
}

Element Algebra::n_product(const Element& a, const Element& b, unsigned n) const {
    Indet fresh = Indet::l;
    if (contains(a, fresh) || contains(b, fresh)) {
        fresh = Indet::n;
        for (Indet cand : {Indet::n, Indet::s, Indet::t}) {
            if (!contains(a, cand) && !contains(b, cand)) {
                fresh = cand;
                break;
            }
        }
    }
    Element br = bracket(a, b, fresh);
    return scale(coeff_extract(br, fresh, n), Rational::factorial(n));
}

CheckReport check_skew(const Algebra& a) {
    CheckReport report{"skew", 0, {}};
    const Signature& sig = a.sig();
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = 0; j < a.rank(); ++j) {
            ++report.items_checked;
            Element rhs = substitute(a.gen_bracket(j, i), Indet::l,
                                     -(pvar(Indet::d) + pvar(Indet::l)));
            Element residual =
                a.gen_bracket(i, j) + scale(rhs, Rational(sign_factor(sig.parity(i), sig.parity(j)), 1));
            if (!residual.is_zero()) {
                std::string where = "(" + sig.gen(i).name + "," + sig.gen(j).name + ")";
                report.violations.push_back({where, residual, element_str(sig, residual)});
            }
        }
    }
    return report;
}

CheckReport check_jacobi(const Algebra& a) {
    CheckReport report{"jacobi", 0, {}};
    const Signature& sig = a.sig();
    for (std::size_t i = 0; i < a.rank(); ++i) {
        for (std::size_t j = 0; j < a.rank(); ++j) {
            for (std::size_t k = 0; k < a.rank(); ++k) {
                ++report.items_checked;
                Element t1 = a.bracket(a.gen(i), a.bracket(a.gen(j), a.gen(k), Indet::m), Indet::l);
                Element t2 = a.bracket_at(a.bracket(a.gen(i), a.gen(j), Indet::l), a.gen(k),
                                          pvar(Indet::l) + pvar(Indet::m), Indet::n);
                Element t3 = a.bracket(a.gen(j), a.bracket(a.gen(i), a.gen(k), Indet::l), Indet::m);
                Element residual =
                    t1 - t2 - scale(t3, Rational(sign_factor(sig.parity(i), sig.parity(j)), 1));
                if (!residual.is_zero()) {
                    std::string where = "(" + sig.gen(i).name + "," + sig.gen(j).name + "," +
                                        sig.gen(k).name + ")";
                    report.violations.push_back({where, residual, element_str(sig, residual)});
                }
            }
        }
    }
    return report;
}

namespace {

Algebra validated(Algebra a) {
    CheckReport skew = check_skew(a);
    if (!skew.pass())
        throw AlgebraError("algebra '" + a.name() + "' fails skew-symmetry on " +
                           skew.violations[0].where + ": " + skew.violations[0].text);
    CheckReport jac = check_jacobi(a);
    if (!jac.pass())
        throw AlgebraError("algebra '" + a.name() + "' fails Jacobi on " +
                           jac.violations[0].where + ": " + jac.violations[0].text);
    return a;
}

Element coeff_on(std::size_t rank, std::size_t gen, Poly p) {
    Element e = zero_element(rank);
    e.coords[gen] = std::move(p);
    return e;
}

} // namespace

Algebra make_neveu_schwarz() {
    auto sig = std::make_shared<Signature>(
        std::vector<Generator>{{"L", Parity::even}, {"G", Parity::odd}});
    Poly d = pvar(Indet::d), l = pvar(Indet::l);
    std::vector<BracketSpec> specs;
    specs.push_back({0, 0, coeff_on(2, 0, d + l.scaled(Rational(2)))});
    specs.push_back({0, 1, coeff_on(2, 1, d + l.scaled(Rational(3, 2)))});
    specs.push_back({1, 1, coeff_on(2, 0, Poly::constant(2))});
    return validated(Algebra::build("NS", sig, specs));
}

Algebra make_example22() {
    auto sig = std::make_shared<Signature>(
        std::vector<Generator>{{"L", Parity::even}, {"W", Parity::odd}});
    Poly d = pvar(Indet::d), l = pvar(Indet::l);
    std::vector<BracketSpec> specs;
    specs.push_back({0, 0, coeff_on(2, 0, d + l.scaled(Rational(2)))});
    specs.push_back({0, 1, coeff_on(2, 1, d + l.scaled(Rational(3, 2)))});
    return validated(Algebra::build("Ex22", sig, specs));
}

Algebra make_virasoro() {
    auto sig = std::make_shared<Signature>(std::vector<Generator>{{"L", Parity::even}});
    Poly d = pvar(Indet::d), l = pvar(Indet::l);
    std::vector<BracketSpec> specs;
    specs.push_back({0, 0, coeff_on(1, 0, d + l.scaled(Rational(2)))});
    return validated(Algebra::build("Vir", sig, specs));
}

Algebra make_abelian(std::vector<Generator> gens) {
    auto sig = std::make_shared<Signature>(std::move(gens));
    return validated(Algebra::build("Abelian", sig, {}));
}

Algebra make_abelian(std::size_t n_even_gens) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < n_even_gens; ++i)
        gens.push_back({"a" + std::to_string(i + 1), Parity::even});
    return make_abelian(std::move(gens));
}

Algebra make_current(std::string name, const LieData& lie) {
    std::size_t dim = lie.basis.size();
    auto sig = std::make_shared<Signature>(lie.basis);
    // Assemble the super Lie bracket table with skew completion.
    std::vector<std::vector<std::vector<Rational>>> c(
        dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim, Rational(0))));
    std::vector<std::vector<bool>> given(dim, std::vector<bool>(dim, false));
    for (const auto& [pair, coeffs] : lie.brackets) {
        auto [i, j] = pair;
        if (i >= dim || j >= dim || coeffs.size() != dim)
            throw AlgebraError("malformed Lie structure constants");
        if (given[i][j]) throw AlgebraError("duplicate Lie bracket entry");
        given[i][j] = true;
        c[i][j] = coeffs;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (given[i][j] || !given[j][i]) continue;
            int s = -sign_factor(sig->parity(i), sig->parity(j));
            for (std::size_t k = 0; k < dim; ++k) c[i][j][k] = c[j][i][k] * Rational(s);
            given[i][j] = true;
        }
    }
    // Super skew on even diagonals.
    for (std::size_t i = 0; i < dim; ++i) {
        if (sig->parity(i) == Parity::even) {
            for (std::size_t k = 0; k < dim; ++k)
                if (!c[i][i][k].is_zero())
                    throw AlgebraError("even diagonal Lie bracket must vanish");
        }
    }
    // Super Jacobi on the structure constants.
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            for (std::size_t k = 0; k < dim; ++k) {
                for (std::size_t t = 0; t < dim; ++t) {
                    Rational lhs(0), r1(0), r2(0);
                    for (std::size_t u = 0; u < dim; ++u) {
                        lhs += c[j][k][u] * c[i][u][t];
                        r1 += c[i][j][u] * c[u][k][t];
                        r2 += c[i][k][u] * c[j][u][t];
                    }
                    Rational rhs = r1 + Rational(sign_factor(sig->parity(i), sig->parity(j))) * r2;
                    if (lhs != rhs)
                        throw AlgebraError("Lie structure constants fail super Jacobi at (" +
                                           sig->gen(i).name + "," + sig->gen(j).name + "," +
                                           sig->gen(k).name + ")");
                }
            }
        }
    }
    std::vector<BracketSpec> specs;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            Element value = zero_element(dim);
            bool nonzero = false;
            for (std::size_t k = 0; k < dim; ++k) {
                if (c[i][j][k].is_zero()) continue;
                value.coords[k] = Poly::constant(c[i][j][k]);
                nonzero = true;
            }
            if (nonzero) specs.push_back({i, j, value});
        }
    }
    return validated(Algebra::build(std::move(name), sig, specs));
}

Algebra make_cur_abelian1() {
    LieData lie;
    lie.basis = {{"a", Parity::even}};
    return make_current("CurAb1", lie);
}

Algebra make_cur_2dim() {
    LieData lie;
    lie.basis = {{"h", Parity::even}, {"e", Parity::even}};
    lie.brackets = {{{0, 1}, {Rational(0), Rational(1)}}};
    return make_current("Cur2", lie);
}

Algebra make_cur_sl2() {
    LieData lie;
    lie.basis = {{"e", Parity::even}, {"h", Parity::even}, {"f", Parity::even}};
    // [h,e]=2e, [h,f]=-2f, [e,f]=h
    lie.brackets = {
        {{1, 0}, {Rational(2), Rational(0), Rational(0)}},
        {{1, 2}, {Rational(0), Rational(0), Rational(-2)}},
        {{0, 2}, {Rational(0), Rational(1), Rational(0)}},
    };
    return make_current("CurSl2", lie);
}

Algebra build_named(const std::string& name) {
    if (name == "neveu_schwarz" || name == "ns") return make_neveu_schwarz();
    if (name == "example22") return make_example22();
    if (name == "virasoro") return make_virasoro();
    if (name.rfind("abelian:", 0) == 0)
        return make_abelian(std::size_t(std::stoul(name.substr(8))));
    if (name == "cur_abelian1") return make_cur_abelian1();
    if (name == "cur_2dim") return make_cur_2dim();
    if (name == "cur_sl2") return make_cur_sl2();
    throw Error("unknown named algebra '" + name + "'");
}

DirectSumResult direct_sum(const Algebra& a, const Algebra& b) {
    std::size_t ra = a.rank(), rb = b.rank();
    bool collision = false;
    for (std::size_t j = 0; j < rb; ++j)
        if (a.sig().index_of(b.sig().gen(j).name)) collision = true;
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < ra; ++i) {
        Generator g = a.sig().gen(i);
        if (collision) g.name += "#1";
        gens.push_back(std::move(g));
    }
    for (std::size_t j = 0; j < rb; ++j) {
        Generator g = b.sig().gen(j);
        if (collision) g.name += "#2";
        gens.push_back(std::move(g));
    }
    auto sig = std::make_shared<Signature>(std::move(gens));
    std::size_t rank = ra + rb;
    std::vector<BracketSpec> specs;
    auto widen = [&](const Element& e, std::size_t offset, std::size_t src_rank) {
        Element w = zero_element(rank);
        for (std::size_t k = 0; k < src_rank; ++k) w.coords[offset + k] = e.coords[k];
        return w;
    };
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ra; ++j)
            if (!a.gen_bracket(i, j).is_zero())
                specs.push_back({i, j, widen(a.gen_bracket(i, j), 0, ra)});
    for (std::size_t i = 0; i < rb; ++i)
        for (std::size_t j = 0; j < rb; ++j)
            if (!b.gen_bracket(i, j).is_zero())
                specs.push_back({ra + i, ra + j, widen(b.gen_bracket(i, j), ra, rb)});
    auto sum = std::make_shared<Algebra>(
        Algebra::build(a.name() + "+" + b.name(), sig, specs));
    return {sum, ra};
}

std::optional<DenseVec> element_to_vec(const Element& e, std::size_t rank, unsigned degree_bound) {
    DenseVec v(rank * (degree_bound + 1), Rational(0));
    for (std::size_t i = 0; i < rank; ++i) {
        for (const auto& t : e.coords[i].terms()) {
            unsigned dexp = t.mono[size_t(Indet::d)];
            Monomial rest = t.mono;
            rest[size_t(Indet::d)] = 0;
            if (rest != kUnitMonomial) return std::nullopt; // depends on a formal variable
            if (dexp > degree_bound) return std::nullopt;
            v[i * (degree_bound + 1) + dexp] = t.coeff;
        }
    }
    return v;
}

Element element_from_vec(const DenseVec& v, std::size_t rank, unsigned degree_bound) {
    Element e = zero_element(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        for (unsigned k = 0; k <= degree_bound; ++k) {
            const Rational& c = v[i * (degree_bound + 1) + k];
            if (c.is_zero()) continue;
            Monomial m{};
            m[size_t(Indet::d)] = uint16_t(k);
            e.coords[i] += Poly::monomial(c, m);
        }
    }
    return e;
}

SubspaceBasis center(const Algebra& a, unsigned degree_bound) {
    std::size_t rank = a.rank();
    std::size_t per_gen = degree_bound + 1;
    std::size_t unknowns = rank * per_gen;
    // Residual of [d^k e_i l e_j] = (-l)^k [e_i l e_j]; match coefficients
    // of every (target generator, monomial) pair.
    std::map<std::tuple<std::size_t, std::size_t, Monomial>, std::map<std::size_t, Rational>> rows;
    Poly minus_l = -pvar(Indet::l);
    for (std::size_t j = 0; j < rank; ++j) {
        for (std::size_t i = 0; i < rank; ++i) {
            const Element& base = a.gen_bracket(i, j);
            if (base.is_zero()) continue;
            for (unsigned k = 0; k < per_gen; ++k) {
                Element contrib = scale(base, minus_l.pow(k));
                std::size_t u = i * per_gen + k;
                for (std::size_t g = 0; g < rank; ++g)
                    for (const auto& t : contrib.coords[g].terms())
                        rows[{j, g, t.mono}][u] += t.coeff;
            }
        }
    }
    LinSystem sys(unknowns);
    for (const auto& [key, cols] : rows) {
        SparseRow row;
        for (const auto& [u, c] : cols)
            if (!c.is_zero()) row.push_back({u, c});
        sys.add_row(std::move(row));
    }
    SubspaceBasis basis;
    basis.degree_bound = degree_bound;
    for (const auto& v : sys.solve_nullspace())
        basis.vectors.push_back(element_from_vec(v, rank, degree_bound));
    return basis;
}

} // namespace cforge
