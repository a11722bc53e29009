#include "tccc/cellular.hpp"
#include "tccc/harness.hpp"
#include "tccc/microlocal.hpp"
#include "tccc/twisted_sheaf.hpp"

#include <benchmark/benchmark.h>

using namespace tccc;

namespace {

Divisor div(const std::string& fan, std::vector<Rational> a)
{
    return Divisor::from_coeffs(named_fan(fan), std::move(a));
}

void BM_StalkP(benchmark::State& state)
{
    const Divisor d = div("F3", {2, 1, 3, -1});
    const RationalVector x(std::vector<Rational>{Rational(1, 3), Rational(-2, 7)});
    for (auto _ : state)
        benchmark::DoNotOptimize(stalk_P(d, x));
}
BENCHMARK(BM_StalkP);

void BM_ArrangementBuild(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    std::vector<Hyperplane> hs;
    for (int i = 0; i < k; ++i) {
        hs.push_back(Hyperplane::make({1, 0}, i));
        hs.push_back(Hyperplane::make({0, 1}, i));
        hs.push_back(Hyperplane::make({1, 1}, i));
    }
    const Box box{{-1, -1}, {k + 1, k + 1}};
    for (auto _ : state)
        benchmark::DoNotOptimize(ArrangementComplex::build(hs, box));
    state.counters["cells"] = static_cast<double>(ArrangementComplex::build(hs, box)->size());
}
BENCHMARK(BM_ArrangementBuild)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_HomComplexCellular(benchmark::State& state)
{
    const Divisor d = div("P2", {1, 1, 1});
    const auto a = arrangement_for({d}, support_box(d));
    const SheafComplex f = to_cellular(d, a);
    for (auto _ : state)
        benchmark::DoNotOptimize(hom_complex(f, f));
}
BENCHMARK(BM_HomComplexCellular)->Unit(benchmark::kMillisecond);

void BM_TorusHom(benchmark::State& state)
{
    const bool f2 = state.range(0) == 1;
    const Divisor a = zero_divisor(named_fan(f2 ? "F2" : "P2"));
    const Divisor b = f2 ? div("F2", {1, 0, 1, 1}) : div("P2", {1, 1, 0});
    for (auto _ : state)
        benchmark::DoNotOptimize(torus_hom(a, b));
}
BENCHMARK(BM_TorusHom)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ToricCohomology(benchmark::State& state)
{
    const Divisor d = div("F3", {2, -1, 1, 3});
    for (auto _ : state)
        benchmark::DoNotOptimize(toric_cohomology(d));
}
BENCHMARK(BM_ToricCohomology)->Unit(benchmark::kMicrosecond);

void BM_ValidatePath(benchmark::State& state)
{
    const auto f = named_fan("F2");
    const Divisor ample = find_ample(f);
    const RationalVector x(std::vector<Rational>{Rational(-5, 7), Rational(3, 4)});
    for (auto _ : state)
        benchmark::DoNotOptimize(validate_path(build_deformation_path(f, x, ample)));
}
BENCHMARK(BM_ValidatePath)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
