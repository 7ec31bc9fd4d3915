#include "cforge/homs.hpp"

namespace cforge {

CheckReport check_triple_hom(const ModuleHom& f) {
    CheckReport report{"triplehom", 0, {}};
    const Algebra& src = *f.source;
    const Algebra& tgt = *f.target;
    Poly l = pvar(Indet::l), m = pvar(Indet::m);
    for (std::size_t i = 0; i < src.rank(); ++i) {
        for (std::size_t j = 0; j < src.rank(); ++j) {
            for (std::size_t k = 0; k < src.rank(); ++k) {
                ++report.items_checked;
                Element t0 = src.bracket_at(src.gen_bracket(i, j), src.gen(k), l + m, Indet::n);
                Element lhs = hom_apply(f, t0);
                Element rhs = tgt.bracket_at(tgt.bracket(f.images[i], f.images[j], Indet::l),
                                             f.images[k], l + m, Indet::n);
                Element residual = lhs - rhs;
                if (!residual.is_zero()) {
                    std::string where = "(" + src.sig().gen(i).name + "," + src.sig().gen(j).name +
                                        "," + src.sig().gen(k).name + ")";
                    report.violations.push_back({where, residual, element_str(tgt.sig(), residual)});
                }
            }
        }
    }
    return report;
}

namespace {

void require_parallel(const ModuleHom& f, const ModuleHom& delta) {
    if (!(f.source->sig() == delta.source->sig()) || !(f.target->sig() == delta.target->sig()))
        throw SpaceMismatch("homs must share source and target");
}

} // namespace

CheckReport check_orthogonal_images(const ModuleHom& f, const ModuleHom& delta) {
    require_parallel(f, delta);
    CheckReport report{"orthogonal-images", 0, {}};
    const Algebra& tgt = *f.target;
    ModuleHom plus = hom_add(f, delta);
    ModuleHom minus = hom_sub(f, delta);
    for (std::size_t i = 0; i < f.source->rank(); ++i) {
        for (std::size_t j = 0; j < f.source->rank(); ++j) {
            ++report.items_checked;
            Element residual = tgt.bracket(plus.images[i], minus.images[j], Indet::l);
            if (!residual.is_zero()) {
                std::string where =
                    "(" + f.source->sig().gen(i).name + "," + f.source->sig().gen(j).name + ")";
                report.violations.push_back({where, residual, element_str(tgt.sig(), residual)});
            }
        }
    }
    return report;
}

CheckReport check_hom_intertwiner(const ModuleHom& f, const ModuleHom& delta) {
    require_parallel(f, delta);
    CheckReport report{"hom-intertwiner", 0, {}};
    const Algebra& src = *f.source;
    const Algebra& tgt = *f.target;
    for (std::size_t i = 0; i < src.rank(); ++i) {
        for (std::size_t j = 0; j < src.rank(); ++j) {
            ++report.items_checked;
            Element lhs = hom_apply(f, src.gen_bracket(i, j));
            Element rhs = tgt.bracket(delta.images[i], f.images[j], Indet::l);
            Element residual = lhs - rhs;
            if (!residual.is_zero()) {
                std::string where =
                    "(" + src.sig().gen(i).name + "," + src.sig().gen(j).name + ")";
                report.violations.push_back({where, residual, element_str(tgt.sig(), residual)});
            }
        }
    }
    return report;
}

DecomposeResult decompose_triple_hom(const ModuleHom& f, const ModuleHom& delta) {
    require_parallel(f, delta);
    Rational half(1, 2);
    DecomposeResult out{hom_scale(hom_add(f, delta), half), hom_scale(hom_sub(f, delta), half),
                        {}, {}, {}, false,
                        "centerlessness and indecomposable splitting of the enveloping "
                        "algebra of the image are assumed, not verified"};
    out.plus_is_hom = hom_check(out.plus, HomKind::hom);
    out.minus_is_antihom = hom_check(out.minus, HomKind::antihom);
    out.orthogonal = check_orthogonal_images(f, delta);
    ModuleHom sum = hom_add(out.plus, out.minus);
    out.sum_exact = sum.images == f.images;
    return out;
}

SubspaceBasis span_closure(const Algebra& alg, const std::vector<Element>& seed,
                           unsigned degree_bound, unsigned max_iters) {
    std::size_t rank = alg.rank();
    RowReducer red(rank * (degree_bound + 1));
    std::vector<Element> members;
    auto try_add = [&](const Element& e) {
        auto v = element_to_vec(e, rank, degree_bound);
        if (!v) return false; // left the window
        if (!red.insert(std::move(*v))) return false;
        members.push_back(e);
        return true;
    };
    for (const auto& e : seed) try_add(e);
    Poly d = pvar(Indet::d);
    for (unsigned iter = 0; iter < max_iters; ++iter) {
        bool grew = false;
        std::vector<Element> snapshot = members;
        for (const auto& u : snapshot)
            if (try_add(scale(u, d))) grew = true;
        for (const auto& u : snapshot) {
            for (const auto& v : snapshot) {
                Element br = alg.bracket(u, v, Indet::l);
                int deg = -1;
                for (const auto& c : br.coords) deg = std::max(deg, c.degree(Indet::l));
                for (int k = 0; k <= deg; ++k)
                    if (try_add(coeff_extract(br, Indet::l, unsigned(k)))) grew = true;
            }
        }
        if (!grew) break;
    }
    SubspaceBasis basis;
    basis.degree_bound = degree_bound;
    for (const auto& v : red.rows())
        basis.vectors.push_back(element_from_vec(v, rank, degree_bound));
    return basis;
}

bool basis_contains(const SubspaceBasis& basis, const Element& e, std::size_t rank) {
    auto v = element_to_vec(e, rank, basis.degree_bound);
    if (!v) return false;
    std::vector<DenseVec> rows;
    for (const auto& b : basis.vectors) {
        auto bv = element_to_vec(b, rank, basis.degree_bound);
        if (!bv) return false;
        rows.push_back(std::move(*bv));
    }
    return in_span(rows, *v, rank * (basis.degree_bound + 1));
}

} // namespace cforge
