#include "tancat/bundle.hpp"
#include "tancat/groebner.hpp"
#include "tancat/ring.hpp"

#include <benchmark/benchmark.h>

using namespace tancat;

static void BM_buchberger_sphere(benchmark::State& state) {
    std::vector<std::string> vars{"x", "y", "z"};
    std::vector<Poly> gens{Poly::parse("x^2 + y^2 + z^2 - 1", vars),
                           Poly::parse("x*y - z", vars)};
    for (auto _ : state) benchmark::DoNotOptimize(buchberger(gens));
}
BENCHMARK(BM_buchberger_sphere);

static void BM_normal_form(benchmark::State& state) {
    FPRing r = FPRing::presented({"x", "y"}, {"x^2 - y", "y^3"});
    Poly p = r.parse("(x + y)^6 - 3*x*y^4");
    for (auto _ : state) benchmark::DoNotOptimize(r.normal_form(p));
}
BENCHMARK(BM_normal_form);

static void BM_kahler_tangent_sphere(benchmark::State& state) {
    FPRing r = FPRing::presented({"x", "y", "z"}, {"x^2 + y^2 + z^2 - 1"});
    for (auto _ : state) benchmark::DoNotOptimize(kahler_tangent(r));
}
BENCHMARK(BM_kahler_tangent_sphere);

static void BM_tangent_axioms_axes(benchmark::State& state) {
    FPRing r = FPRing::presented({"x", "y"}, {"x*y"});
    for (auto _ : state) benchmark::DoNotOptimize(check_tangent_axioms(r));
}
BENCHMARK(BM_tangent_axioms_axes);

static void BM_bundle_check_ring(benchmark::State& state) {
    FPRing axes = FPRing::presented({"x", "y"}, {"x*y"});
    FPModule m(axes, {"u"}, {{axes.parse("x")}, {axes.parse("y")}});
    DiffBundle b = mod_to_bundle_ring(m);
    for (auto _ : state) benchmark::DoNotOptimize(check_diff_bundle(b));
}
BENCHMARK(BM_bundle_check_ring);

static void BM_bundle_check_affine(benchmark::State& state) {
    FPRing axes = FPRing::presented({"x", "y"}, {"x*y"});
    FPModule m(axes, {"u"}, {{axes.parse("x")}, {axes.parse("y")}});
    DiffBundle b = mod_to_bundle_affine(m);
    for (auto _ : state) benchmark::DoNotOptimize(check_diff_bundle(b));
}
BENCHMARK(BM_bundle_check_affine);

static void BM_rosicky_derivation(benchmark::State& state) {
    FPRing axes = FPRing::presented({"x", "y"}, {"x*y"});
    FPModule m(axes, {"u"}, {{axes.parse("x")}, {axes.parse("y")}});
    DiffBundle b = mod_to_bundle_ring(m);
    for (auto _ : state) benchmark::DoNotOptimize(derive_sum_and_negative_via_rosicky(b));
}
BENCHMARK(BM_rosicky_derivation);

BENCHMARK_MAIN();
