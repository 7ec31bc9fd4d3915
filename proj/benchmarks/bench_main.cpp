#include <benchmark/benchmark.h>

#include "cforge/derivations.hpp"

using namespace cforge;

namespace {

Poly dense_poly(unsigned deg) {
    Poly p;
    long c = 1;
    for (unsigned a = 0; a <= deg; ++a) {
        for (unsigned b = 0; a + b <= deg; ++b) {
            Monomial m{};
            m[size_t(Indet::d)] = uint16_t(a);
            m[size_t(Indet::l)] = uint16_t(b);
            p += Poly::monomial(Rational(c++, 3), m);
        }
    }
    return p;
}

void BM_PolyMul(benchmark::State& state) {
    Poly p = dense_poly(unsigned(state.range(0)));
    Poly q = dense_poly(unsigned(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(p * q);
}
BENCHMARK(BM_PolyMul)->Arg(4)->Arg(8);

void BM_SkewSubstitution(benchmark::State& state) {
    Poly p = dense_poly(8);
    Poly target = -(pvar(Indet::d) + pvar(Indet::l));
    for (auto _ : state) benchmark::DoNotOptimize(p.substitute(Indet::l, target));
}
BENCHMARK(BM_SkewSubstitution);

void BM_Nullspace(benchmark::State& state) {
    std::size_t n = std::size_t(state.range(0));
    for (auto _ : state) {
        LinSystem sys(n);
        for (std::size_t r = 0; r + 2 < n; ++r) {
            SparseRow row;
            row.push_back({r, Rational(1)});
            row.push_back({r + 1, Rational(-2, 3)});
            row.push_back({r + 2, Rational(long(r % 5) + 1)});
            sys.add_row(std::move(row));
        }
        benchmark::DoNotOptimize(sys.solve_nullspace());
    }
}
BENCHMARK(BM_Nullspace)->Arg(16)->Arg(64);

void BM_JacobiCheck(benchmark::State& state) {
    Algebra alg = make_cur_sl2();
    for (auto _ : state) benchmark::DoNotOptimize(check_jacobi(alg));
}
BENCHMARK(BM_JacobiCheck);

void BM_SolveCder(benchmark::State& state) {
    Algebra ns = make_neveu_schwarz();
    unsigned bound = unsigned(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_space(ns, PredicateTag::make_cder(Parity::even), bound));
}
BENCHMARK(BM_SolveCder)->Arg(2)->Arg(3);

void BM_SolveTripleRule(benchmark::State& state) {
    Algebra ns = make_neveu_schwarz();
    PredicateTag tag = PredicateTag::make_abcd(
        Parity::even, {Rational(1), Rational(1), Rational(1), Rational(1)});
    unsigned bound = unsigned(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve_space(ns, tag, bound));
}
BENCHMARK(BM_SolveTripleRule)->Arg(2)->Arg(3);

void BM_GcBracket(benchmark::State& state) {
    Algebra ns = make_neveu_schwarz();
    ConformalMap adL = ad(ns, ns.gen(0));
    ConformalMap addL = cmap_partial(adL);
    for (auto _ : state) benchmark::DoNotOptimize(gc_bracket(adL, addL, Indet::x, Indet::y));
}
BENCHMARK(BM_GcBracket);

} // namespace

BENCHMARK_MAIN();
