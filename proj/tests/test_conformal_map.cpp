#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cforge/conformal_map.hpp"
#include "test_util.hpp"

using namespace cforge;

namespace {

Poly d() { return pvar(Indet::d); }
Poly l() { return pvar(Indet::l); }
Poly x() { return pvar(Indet::x); }
Poly y() { return pvar(Indet::y); }

Element on(std::size_t rank, std::size_t gen, Poly p) {
    Element e = zero_element(rank);
    e.coords[gen] = std::move(p);
    return e;
}

} // namespace

TEST_CASE("ad on neveu-schwarz") {
    Algebra ns = make_neveu_schwarz();
    ConformalMap adL = ad(ns, ns.gen(0));
    CHECK(adL.parity == Parity::even);
    CHECK(adL.images[0] == on(2, 0, d() + x().scaled(Rational(2))));
    CHECK(adL.images[1] == on(2, 1, d() + x().scaled(Rational(3, 2))));

    // apply(ad L, G, x) = (d + 3x/2) G
    CHECK(apply(adL, ns.gen(1), Indet::x) == on(2, 1, d() + x().scaled(Rational(3, 2))));
    // zero map
    CHECK(apply(zero_map(ns.sig_ptr(), Parity::even), ns.gen(0), Indet::x).is_zero());

    // ad(dL) = d . ad(L): images scaled by -x
    ConformalMap addL = ad(ns, scale(ns.gen(0), d()));
    CHECK(addL.images == cmap_partial(adL).images);

    // d-linearity of ad on random homogeneous elements of the built-ins
    testutil::Rng rng;
    for (const Algebra& alg : {make_neveu_schwarz(), make_example22(), make_cur_sl2()}) {
        for (Parity p : {Parity::even, Parity::odd}) {
            Element a = testutil::random_homogeneous(rng, alg, p, 2);
            CHECK(ad(alg, scale(a, d())).images == cmap_partial(ad(alg, a)).images);
        }
    }

    // ad on an abelian algebra vanishes
    Algebra ab = make_abelian(2);
    CHECK(ad(ab, ab.gen(0)).is_zero());

    // non-homogeneous argument rejected
    CHECK_THROWS_AS(ad(ns, ns.gen(0) + ns.gen(1)), AlgebraError);
}

TEST_CASE("apply satisfies the conformal-linearity law") {
    Algebra ns = make_neveu_schwarz();
    testutil::Rng rng;
    for (int iter = 0; iter < 12; ++iter) {
        std::vector<Element> images(2, zero_element(2));
        Parity p = rng.irange(0, 1) ? Parity::odd : Parity::even;
        for (std::size_t i = 0; i < 2; ++i) {
            std::size_t tgt = (p == Parity::even) ? i : 1 - i;
            images[i].coords[tgt] = testutil::random_poly(rng, {Indet::d, Indet::x}, 3, 2);
        }
        ConformalMap phi = make_conformal_map(ns.sig_ptr(), p, Indet::x, images);
        Element a = testutil::random_element(rng, ns, 2);
        Element lhs = apply(phi, scale(a, d()), Indet::x);
        Element rhs = scale(apply(phi, a, Indet::x), d() + x());
        CHECK(lhs == rhs);

        // parity of the image follows the sign rule
        for (Parity pa : {Parity::even, Parity::odd}) {
            Element h = testutil::random_homogeneous(rng, ns, pa, 2);
            Element img = apply(phi, h, Indet::x);
            if (!img.is_zero()) CHECK(homogeneous_parity(ns.sig(), img) == p + pa);
        }
    }
    // collision guard
    ConformalMap adL = ad(ns, ns.gen(0));
    Element with_x = scale(ns.gen(0), x());
    CHECK_THROWS_AS(apply(adL, with_x, Indet::x), VariableCollision);
}

TEST_CASE("gc bracket of inner maps is the inner map of the bracket") {
    Algebra ns = make_neveu_schwarz();
    ConformalMap adL = ad(ns, ns.gen(0));
    ConformalMap br = gc_bracket(adL, adL, Indet::x, Indet::y);
    CHECK(br.var == Indet::y);
    CHECK(br.parity == Parity::even);
    // [adL_x adL]_y = ad((d+2x)L)_y = (2x - y) adL_y
    Poly factor = x().scaled(Rational(2)) - y();
    CHECK(br.images[0] == on(2, 0, factor * (d() + y().scaled(Rational(2)))));
    CHECK(br.images[1] == on(2, 1, factor * (d() + y().scaled(Rational(3, 2)))));

    // odd self-bracket: [adG_x adG]_y = ad([G_x G])_y = ad(2L)_y
    ConformalMap adG = ad(ns, ns.gen(1));
    ConformalMap brG = gc_bracket(adG, adG, Indet::x, Indet::y);
    CHECK(brG.parity == Parity::even);
    CHECK(brG.images[0] == on(2, 0, (d() + y().scaled(Rational(2))).scaled(Rational(2))));
    CHECK(brG.images[1] == on(2, 1, (d() + y().scaled(Rational(3, 2))).scaled(Rational(2))));

    // bracket against zero vanishes
    CHECK(gc_bracket(adL, zero_map(ns.sig_ptr(), Parity::even), Indet::x, Indet::y).is_zero());
}

TEST_CASE("gc bracket conformal skew-symmetry") {
    Algebra ns = make_neveu_schwarz();
    ConformalMap adL = ad(ns, ns.gen(0));
    ConformalMap adG = ad(ns, ns.gen(1));
    ConformalMap addL = cmap_partial(adL);
    std::vector<ConformalMap> maps{adL, adG, addL};
    for (const auto& phi : maps) {
        for (const auto& psi : maps) {
            ConformalMap lhs = gc_bracket(phi, psi, Indet::x, Indet::y);
            // [psi_n phi]_y with n -> y - x
            ConformalMap rhs = gc_bracket(psi, phi, Indet::n, Indet::y);
            int sgn = sign_factor(phi.parity, psi.parity);
            for (std::size_t i = 0; i < ns.rank(); ++i) {
                Element flipped = substitute(rhs.images[i], Indet::n, y() - x());
                CHECK((lhs.images[i] + scale(flipped, Rational(sgn))).is_zero());
            }
        }
    }
}

TEST_CASE("module hom checks") {
    auto ns = std::make_shared<Algebra>(make_neveu_schwarz());
    ModuleHom id = identity_hom(ns);
    CHECK(hom_check(id, HomKind::hom).pass());

    ModuleHom neg = hom_scale(id, Rational(-1));
    CHECK(hom_check(neg, HomKind::antihom).pass());
    CheckReport bad = hom_check(neg, HomKind::hom);
    REQUIRE_FALSE(bad.pass());
    CHECK(bad.violations[0].where == "(L,L)");
    // -2(d+2l) L
    Element expected = zero_element(2);
    expected.coords[0] = (d() + l().scaled(Rational(2))).scaled(Rational(-2));
    CHECK(bad.violations[0].residual == expected);

    // direct-sum injections and projections are homomorphisms
    DirectSumResult sum = direct_sum(*ns, *ns);
    for (int which : {0, 1}) {
        ModuleHom inj = sum_injection(sum, ns, which);
        ModuleHom proj = sum_projection(sum, ns, which);
        CHECK(hom_check(inj, HomKind::hom).pass());
        CHECK(hom_check(proj, HomKind::hom).pass());
        // proj . inj = id on the summand
        CHECK(hom_compose(proj, inj).images == identity_hom(ns).images);
    }
}

TEST_CASE("automorphism certification") {
    auto ns = std::make_shared<Algebra>(make_neveu_schwarz());
    AutomorphismCert cid = is_automorphism(identity_hom(ns));
    CHECK(cid.ok);
    CHECK(cid.det == Poly::constant(1));

    // L -> L, G -> -G
    std::vector<Element> images{on(2, 0, Poly::constant(1)), on(2, 1, Poly::constant(-1))};
    ModuleHom sg = make_module_hom(ns, ns, Parity::even, images);
    AutomorphismCert csg = is_automorphism(sg);
    CHECK(csg.ok);
    CHECK(csg.det == Poly::constant(-1));
    REQUIRE(csg.inverse.has_value());
    // the sign automorphism is an involution
    ModuleHom round = hom_compose(*csg.inverse, sg);
    CHECK(round.images == identity_hom(ns).images);

    // L -> dL, G -> G is not even a homomorphism on NS
    std::vector<Element> dil{on(2, 0, d()), on(2, 1, Poly::constant(1))};
    CHECK_FALSE(is_automorphism(make_module_hom(ns, ns, Parity::even, dil)).ok);

    // on an abelian algebra every module map is a hom; the determinant
    // criterion is what rejects a -> d a
    auto ab = std::make_shared<Algebra>(make_abelian(1));
    std::vector<Element> dmul{on(1, 0, d())};
    AutomorphismCert cd = is_automorphism(make_module_hom(ab, ab, Parity::even, dmul));
    CHECK_FALSE(cd.ok);
    CHECK(cd.det == d());
    CHECK(cd.reason.find("unit") != std::string::npos);

    // diagonal scaling automorphism of Cur(sl2): e -> 2e, h -> h, f -> f/2
    auto sl2 = std::make_shared<Algebra>(make_cur_sl2());
    std::vector<Element> diag{on(3, 0, Poly::constant(2)), on(3, 1, Poly::constant(1)),
                              on(3, 2, Poly::constant(Rational(1, 2)))};
    AutomorphismCert cdiag = is_automorphism(make_module_hom(sl2, sl2, Parity::even, diag));
    CHECK(cdiag.ok);
    CHECK(cdiag.det == Poly::constant(1));
    REQUIRE(cdiag.inverse.has_value());
    CHECK(hom_compose(sg, sg).images == identity_hom(ns).images);
}

TEST_CASE("hom composition with conformal maps") {
    auto ns = std::make_shared<Algebra>(make_neveu_schwarz());
    std::vector<Element> images{on(2, 0, Poly::constant(1)), on(2, 1, Poly::constant(-1))};
    ModuleHom sg = make_module_hom(ns, ns, Parity::even, images);
    ConformalMap adL = ad(*ns, ns->gen(0));
    ConformalMap composed = compose_hom_cmap(sg, adL);
    CHECK(composed.images[0] == on(2, 0, d() + x().scaled(Rational(2))));
    CHECK(composed.images[1] == on(2, 1, -(d() + x().scaled(Rational(3, 2)))));
}

TEST_CASE("map variable renaming") {
    Algebra ns = make_neveu_schwarz();
    ConformalMap adL = ad(ns, ns.gen(0));
    ConformalMap withY = with_var(adL, Indet::y);
    CHECK(withY.var == Indet::y);
    CHECK(withY.images[0] == on(2, 0, d() + y().scaled(Rational(2))));
    CHECK(with_var(withY, Indet::x).images == adL.images);
    CHECK(cmap_params(adL).empty());
    ConformalMap fam = gc_bracket(adL, adL, Indet::x, Indet::y);
    CHECK(cmap_params(fam) == std::vector<Indet>{Indet::x});
}
