#include "cforge/conformal_map.hpp"

namespace cforge {

bool ConformalMap::is_zero() const {
    for (const auto& e : images)
        if (!e.is_zero()) return false;
    return true;
}

ConformalMap make_conformal_map(SigPtr sig, Parity parity, Indet var,
                                std::vector<Element> images) {
    if (var == Indet::d) throw VariableCollision("map variable cannot be d");
    if (images.size() != sig->rank()) throw AlgebraError("conformal map image count mismatch");
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].coords.size() != sig->rank())
            throw AlgebraError("conformal map image rank mismatch");
        Parity want = parity + sig->parity(i);
        for (std::size_t k = 0; k < sig->rank(); ++k)
            if (!images[i].coords[k].is_zero() && sig->parity(k) != want)
                throw AlgebraError("conformal map image of '" + sig->gen(i).name +
                                   "' violates parity " + std::string(parity_name(parity)));
    }
    return ConformalMap{std::move(sig), parity, var, std::move(images)};
}

ConformalMap zero_map(SigPtr sig, Parity parity, Indet var) {
    std::vector<Element> images(sig->rank(), zero_element(sig->rank()));
    return ConformalMap{std::move(sig), parity, var, std::move(images)};
}

namespace {

void require_compatible(const ConformalMap& a, const ConformalMap& b) {
    if (!(*a.sig == *b.sig)) throw SpaceMismatch("conformal maps over different signatures");
    if (a.parity != b.parity) throw SpaceMismatch("conformal maps of different parity");
    if (a.var != b.var) throw SpaceMismatch("conformal maps with different variables");
}

} // namespace

ConformalMap cmap_add(const ConformalMap& a, const ConformalMap& b) {
    require_compatible(a, b);
    ConformalMap r = a;
    for (std::size_t i = 0; i < r.images.size(); ++i) r.images[i] += b.images[i];
    return r;
}

ConformalMap cmap_sub(const ConformalMap& a, const ConformalMap& b) {
    require_compatible(a, b);
    ConformalMap r = a;
    for (std::size_t i = 0; i < r.images.size(); ++i) r.images[i] -= b.images[i];
    return r;
}

ConformalMap cmap_scale(const ConformalMap& a, const Rational& c) {
    ConformalMap r = a;
    for (auto& img : r.images) img = scale(img, c);
    return r;
}

ConformalMap cmap_partial(const ConformalMap& a) {
    ConformalMap r = a;
    Poly minus_var = -pvar(a.var);
    for (auto& img : r.images) img = scale(img, minus_var);
    return r;
}

ConformalMap with_var(const ConformalMap& a, Indet new_var) {
    if (new_var == a.var) return a;
    if (new_var == Indet::d) throw VariableCollision("map variable cannot be d");
    for (const auto& img : a.images)
        if (contains(img, new_var))
            throw VariableCollision("map already uses '" + std::string(indet_name(new_var)) + "'");
    ConformalMap r = a;
    r.var = new_var;
    Poly nv = pvar(new_var);
    for (auto& img : r.images) img = substitute(img, a.var, nv);
    return r;
}

std::vector<Indet> cmap_params(const ConformalMap& a) {
    std::vector<Indet> out;
    for (std::size_t i = 0; i < kIndetCount; ++i) {
        Indet v = Indet(i);
        if (v == Indet::d || v == a.var) continue;
        for (const auto& img : a.images) {
            if (contains(img, v)) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

Element apply_at(const ConformalMap& phi, const Element& a, const Poly& at) {
    if (a.coords.size() != phi.sig->rank()) throw Error("element rank mismatch in apply");
    Poly d_shift = pvar(Indet::d) + at;
    Element result = zero_element(phi.sig->rank());
    for (std::size_t j = 0; j < a.coords.size(); ++j) {
        if (a.coords[j].is_zero() || phi.images[j].is_zero()) continue;
        Poly pj = a.coords[j].substitute(Indet::d, d_shift);
        Element img = pvar(phi.var) == at ? phi.images[j] : substitute(phi.images[j], phi.var, at);
        result += scale(img, pj);
    }
    return result;
}

Element apply(const ConformalMap& phi, const Element& a, Indet at_var) {
    if (at_var == Indet::d) throw VariableCollision("cannot evaluate a map at d");
    if (contains(a, at_var))
        throw VariableCollision("argument already contains '" +
                                std::string(indet_name(at_var)) + "'");
    return apply_at(phi, a, pvar(at_var));
}

ConformalMap ad(const Algebra& alg, const Element& a, Indet var) {
    auto p = homogeneous_parity(alg.sig(), a);
    if (!p) throw AlgebraError("ad requires a parity-homogeneous element");
    std::vector<Element> images;
    images.reserve(alg.rank());
    for (std::size_t j = 0; j < alg.rank(); ++j) images.push_back(alg.bracket(a, alg.gen(j), var));
    return make_conformal_map(alg.sig_ptr(), *p, var, std::move(images));
}

ConformalMap gc_bracket(const ConformalMap& phi, const ConformalMap& psi, Indet xv, Indet yv) {
    if (!(*phi.sig == *psi.sig)) throw SpaceMismatch("gc bracket over different signatures");
    if (xv == yv || xv == Indet::d || yv == Indet::d)
        throw VariableCollision("gc bracket needs two distinct non-d variables");
    for (const ConformalMap* f : {&phi, &psi})
        for (Indet p : cmap_params(*f))
            if (p == xv || p == yv)
                throw VariableCollision("gc bracket variable captures a map parameter");
    Poly px = pvar(xv), py = pvar(yv);
    Poly ymx = py - px;
    int sgn = sign_factor(phi.parity, psi.parity);
    std::size_t rank = phi.sig->rank();
    std::vector<Element> images;
    images.reserve(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        Element psi_i = substitute(psi.images[i], psi.var, ymx);
        Element t1 = apply_at(phi, psi_i, px);
        Element phi_i = substitute(phi.images[i], phi.var, px);
        Element t2 = apply_at(psi, phi_i, ymx);
        images.push_back(t1 - scale(t2, Rational(sgn)));
    }
    return ConformalMap{phi.sig, phi.parity + psi.parity, yv, std::move(images)};
}

bool ModuleHom::is_zero() const {
    for (const auto& e : images)
        if (!e.is_zero()) return false;
    return true;
}

ModuleHom make_module_hom(AlgebraPtr source, AlgebraPtr target, Parity parity,
                          std::vector<Element> images) {
    if (images.size() != source->rank()) throw AlgebraError("module hom image count mismatch");
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].coords.size() != target->rank())
            throw AlgebraError("module hom image rank mismatch");
        Parity want = parity + source->sig().parity(i);
        for (std::size_t k = 0; k < target->rank(); ++k) {
            const Poly& c = images[i].coords[k];
            if (c.is_zero()) continue;
            for (Indet v : c.vars())
                if (v != Indet::d)
                    throw AlgebraError("module hom image may only use d");
            if (target->sig().parity(k) != want)
                throw AlgebraError("module hom image of '" + source->sig().gen(i).name +
                                   "' violates parity " + std::string(parity_name(parity)));
        }
    }
    return ModuleHom{std::move(source), std::move(target), parity, std::move(images)};
}

ModuleHom identity_hom(const AlgebraPtr& alg) {
    std::vector<Element> images;
    for (std::size_t i = 0; i < alg->rank(); ++i) images.push_back(alg->gen(i));
    return make_module_hom(alg, alg, Parity::even, std::move(images));
}

ModuleHom zero_hom(AlgebraPtr source, AlgebraPtr target, Parity parity) {
    std::vector<Element> images(source->rank(), zero_element(target->rank()));
    return ModuleHom{std::move(source), std::move(target), parity, std::move(images)};
}

namespace {

std::size_t summand_offset(const DirectSumResult& sum, const AlgebraPtr& part, int which) {
    if (which != 0 && which != 1) throw Error("direct-sum component must be 0 or 1");
    std::size_t offset = which == 0 ? 0 : sum.left_rank;
    std::size_t rank = which == 0 ? sum.left_rank : sum.algebra->rank() - sum.left_rank;
    if (part->rank() != rank) throw SpaceMismatch("algebra is not that direct-sum component");
    return offset;
}

} // namespace

ModuleHom sum_injection(const DirectSumResult& sum, const AlgebraPtr& part, int which) {
    std::size_t offset = summand_offset(sum, part, which);
    std::vector<Element> images;
    for (std::size_t i = 0; i < part->rank(); ++i) {
        Element e = zero_element(sum.algebra->rank());
        e.coords[offset + i] = Poly::constant(1);
        images.push_back(std::move(e));
    }
    return make_module_hom(part, sum.algebra, Parity::even, std::move(images));
}

ModuleHom sum_projection(const DirectSumResult& sum, const AlgebraPtr& part, int which) {
    std::size_t offset = summand_offset(sum, part, which);
    std::vector<Element> images(sum.algebra->rank(), zero_element(part->rank()));
    for (std::size_t i = 0; i < part->rank(); ++i)
        images[offset + i].coords[i] = Poly::constant(1);
    return make_module_hom(sum.algebra, part, Parity::even, std::move(images));
}

namespace {

void require_same_shape(const ModuleHom& a, const ModuleHom& b) {
    if (!(a.source->sig() == b.source->sig()) || !(a.target->sig() == b.target->sig()) ||
        a.parity != b.parity)
        throw SpaceMismatch("module homs with different shapes");
}

} // namespace

ModuleHom hom_add(const ModuleHom& a, const ModuleHom& b) {
    require_same_shape(a, b);
    ModuleHom r = a;
    for (std::size_t i = 0; i < r.images.size(); ++i) r.images[i] += b.images[i];
    return r;
}

ModuleHom hom_sub(const ModuleHom& a, const ModuleHom& b) {
    require_same_shape(a, b);
    ModuleHom r = a;
    for (std::size_t i = 0; i < r.images.size(); ++i) r.images[i] -= b.images[i];
    return r;
}

ModuleHom hom_scale(const ModuleHom& a, const Rational& c) {
    ModuleHom r = a;
    for (auto& img : r.images) img = scale(img, c);
    return r;
}

Element hom_apply(const ModuleHom& f, const Element& a) {
    if (a.coords.size() != f.source->rank()) throw Error("element rank mismatch in hom_apply");
    Element result = zero_element(f.target->rank());
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i].is_zero()) continue;
        result += scale(f.images[i], a.coords[i]);
    }
    return result;
}

ModuleHom hom_compose(const ModuleHom& f, const ModuleHom& g) {
    if (!(g.target->sig() == f.source->sig()))
        throw SpaceMismatch("hom composition shape mismatch");
    std::vector<Element> images;
    for (std::size_t i = 0; i < g.images.size(); ++i) images.push_back(hom_apply(f, g.images[i]));
    return ModuleHom{g.source, f.target, f.parity + g.parity, std::move(images)};
}

ConformalMap compose_hom_cmap(const ModuleHom& f, const ConformalMap& phi) {
    if (!(f.source->sig() == *phi.sig) || !(f.target->sig() == *phi.sig))
        throw SpaceMismatch("hom/conformal map composition shape mismatch");
    std::vector<Element> images;
    for (const auto& img : phi.images) images.push_back(hom_apply(f, img));
    return make_conformal_map(phi.sig, f.parity + phi.parity, phi.var, std::move(images));
}

CheckReport hom_check(const ModuleHom& f, HomKind kind) {
    CheckReport report{kind == HomKind::hom ? "hom" : "antihom", 0, {}};
    const Algebra& src = *f.source;
    const Algebra& tgt = *f.target;
    int s = kind == HomKind::hom ? -1 : 1;
    for (std::size_t i = 0; i < src.rank(); ++i) {
        for (std::size_t j = 0; j < src.rank(); ++j) {
            ++report.items_checked;
            Element lhs = hom_apply(f, src.gen_bracket(i, j));
            Element rhs = tgt.bracket(f.images[i], f.images[j], Indet::l);
            Element residual = lhs + scale(rhs, Rational(s));
            if (!residual.is_zero()) {
                std::string where = "(" + src.sig().gen(i).name + "," + src.sig().gen(j).name + ")";
                report.violations.push_back({where, residual, element_str(tgt.sig(), residual)});
            }
        }
    }
    return report;
}

namespace {

Poly poly_det(std::vector<std::vector<Poly>> m) {
    std::size_t n = m.size();
    if (n == 0) return Poly::constant(1);
    if (n == 1) return m[0][0];
    Poly det;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<Poly>> minor;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<Poly> row(m[r].begin() + 1, m[r].end());
            minor.push_back(std::move(row));
        }
        Poly term = m[i][0] * poly_det(std::move(minor));
        det += (i % 2 == 0) ? term : -term;
    }
    return det;
}

} // namespace

AutomorphismCert is_automorphism(const ModuleHom& f) {
    AutomorphismCert cert;
    if (f.parity != Parity::even) {
        cert.reason = "not grade-preserving";
        return cert;
    }
    if (!(*f.source == *f.target)) {
        cert.reason = "source and target algebras differ";
        return cert;
    }
    CheckReport hc = hom_check(f, HomKind::hom);
    if (!hc.pass()) {
        cert.reason = "hom check fails on " + hc.violations[0].where + ": " + hc.violations[0].text;
        return cert;
    }
    std::size_t n = f.source->rank();
    std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = f.images[i].coords[j];
    cert.det = poly_det(m);
    if (!cert.det.is_constant() || cert.det.is_zero()) {
        cert.reason = "determinant " + cert.det.str() + " is not a unit of Q[d]";
        return cert;
    }
    Rational det_inv = Rational(1) / cert.det.constant_value();
    // Inverse images from the adjugate: N = adj(M)/det with M f-row-major,
    // so f^{-1}(e_i) = sum_j N[i][j] e_j where N[i][j] = cof_{j,i}(M)/det.
    std::vector<Element> inv_images;
    for (std::size_t i = 0; i < n; ++i) {
        Element img = zero_element(n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::vector<Poly>> minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == j) continue;
                std::vector<Poly> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != i) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            Poly cof = poly_det(std::move(minor));
            if ((i + j) % 2 == 1) cof = -cof;
            img.coords[j] = cof.scaled(det_inv);
        }
        inv_images.push_back(std::move(img));
    }
    cert.inverse = make_module_hom(f.source, f.target, Parity::even, std::move(inv_images));
    cert.ok = true;
    return cert;
}

} // namespace cforge
