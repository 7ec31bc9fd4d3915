#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cforge/basis_io.hpp"

using namespace cforge;

namespace {

AbcdParams abcd(long a, long b, long c, long dd) {
    return {Rational(a), Rational(b), Rational(c), Rational(dd)};
}

} // namespace

TEST_CASE("basis files round-trip byte-identically") {
    Algebra ns = make_neveu_schwarz();
    MapSpace s = solve_space(ns, PredicateTag::make_cder(Parity::even), 2);
    s.algebra_name = "NS";
    BasisFileData data = basis_from_space(s);
    std::string bytes = serialize_basis(data);
    BasisFileData reparsed = parse_basis(bytes);
    CHECK(serialize_basis(reparsed) == bytes);
    CHECK(reparsed.algebra == "NS");
    CHECK(reparsed.predicate == "cder");
    CHECK(reparsed.degree_bound == 2);
    CHECK(reparsed.maps.size() == 2);

    PairSpace p = solve_gctder_space(ns, Parity::even, 2);
    p.algebra_name = "NS";
    std::string pair_bytes = serialize_basis(basis_from_pair_space(p));
    CHECK(serialize_basis(parse_basis(pair_bytes)) == pair_bytes);

    CHECK_THROWS_AS(parse_basis("{not json"), Error);
    CHECK_THROWS_AS(parse_basis("{\"schema_version\": 9}"), Error);
}

TEST_CASE("file-level operations agree with the library") {
    Algebra ns = make_neveu_schwarz();
    MapSpace cd = solve_space(ns, PredicateTag::make_cder(Parity::even), 2);
    MapSpace ctd = solve_space(ns, PredicateTag::make_abcd(Parity::even, abcd(1, 1, 1, 1)), 2);
    MapSpace in = inner_space(ns, Parity::even, 2);
    cd.algebra_name = ctd.algebra_name = in.algebra_name = "NS";

    BasisFileData fcd = basis_from_space(cd);
    BasisFileData fctd = basis_from_space(ctd);
    BasisFileData fin = basis_from_space(in);

    CHECK(basis_equal_span(fcd, fctd) == space_equal(cd, ctd));
    CHECK(basis_equal_span(fcd, fin));

    BasisFileData finter = basis_intersect(fcd, fctd);
    MapSpace linter = space_intersect(cd, ctd);
    CHECK(finter.maps.size() == linter.dim());
    CHECK(basis_equal_span(finter, fcd));

    BasisFileData fcent = basis_centralizer(fctd, fin);
    MapSpace lcent = centralizer_in(ctd, in);
    CHECK(fcent.maps.size() == lcent.dim());

    // empty second space: vacuous condition returns the first space
    BasisFileData fempty = fcent;
    BasisFileData vac = basis_centralizer(fctd, fempty);
    CHECK(vac.maps.size() == fctd.maps.size());

    std::string why;
    BasisFileData other = fcd;
    other.degree_bound = 3;
    CHECK_FALSE(basis_compatible(fcd, other, &why));
    CHECK(why == "different degree bounds");
    CHECK_THROWS_AS(basis_equal_span(fcd, other), SpaceMismatch);
}
