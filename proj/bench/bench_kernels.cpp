#include <benchmark/benchmark.h>

#include "tamefiber/defmod/defmod.hpp"
#include "tamefiber/dlcomb/dlcomb.hpp"
#include "tamefiber/fingroup/characters.hpp"
#include "tamefiber/fingroup/group.hpp"

using namespace tamefiber;

namespace {

std::vector<params::InertialParam> taus(unsigned n, std::uint64_t q)
{
  std::vector<params::InertialParam> out;
  for (const auto& s : params::enumerate_ss_params(n, q))
    out.push_back(params::InertialParam::from_semisimple(s));
  return out;
}

defmod::ResidualPoint jordan()
{
  defmod::FMat s(2, 2, 0), p(2, 2, 0);
  s(0, 0) = s(0, 1) = s(1, 1) = 1;
  p(0, 0) = p(1, 1) = 1;
  return {exactalg::FiniteField::get(2, 1), s, p, 3};
}

void BM_enumerate_codes(benchmark::State& st)
{
  for (auto _ : st)
    benchmark::DoNotOptimize(fingroup::enumerate_codes(3, 2));
}

void BM_enumerate_codes_reference(benchmark::State& st)
{
  for (auto _ : st)
    benchmark::DoNotOptimize(fingroup::reference::enumerate_codes(3, 2));
}

void BM_mackey(benchmark::State& st)
{
  const fingroup::FqGroup g(2, 5);
  for (auto _ : st)
    benchmark::DoNotOptimize(fingroup::mackey_selfpairing(g));
}

void BM_mackey_reference(benchmark::State& st)
{
  const fingroup::FqGroup g(2, 5);
  for (auto _ : st)
    benchmark::DoNotOptimize(fingroup::reference::mackey_selfpairing(g));
}

void BM_multiplicity_table(benchmark::State& st)
{
  const auto labels = dlcomb::gg_constituent_labels(3, 3);
  const auto t = taus(3, 3);
  for (auto _ : st)
    benchmark::DoNotOptimize(dlcomb::multiplicity_table(labels, t));
}

void BM_multiplicity_table_reference(benchmark::State& st)
{
  const auto labels = dlcomb::gg_constituent_labels(3, 3);
  const auto t = taus(3, 3);
  for (auto _ : st)
    benchmark::DoNotOptimize(dlcomb::reference::multiplicity_table(labels, t));
}

void BM_enumerate_points(benchmark::State& st)
{
  const auto A = exactalg::ArtinLocalRing::truncated_poly(2, 1, 3);
  const auto r = jordan();
  for (auto _ : st)
    benchmark::DoNotOptimize(defmod::enumerate_points(A, r));
}

void BM_enumerate_points_reference(benchmark::State& st)
{
  const auto A = exactalg::ArtinLocalRing::truncated_poly(2, 1, 3);
  const auto r = jordan();
  for (auto _ : st)
    benchmark::DoNotOptimize(defmod::reference::enumerate_points(A, r));
}

void BM_probe(benchmark::State& st)
{
  const exactalg::SquareZeroExtension ext(exactalg::RingHom::truncation(
      exactalg::ArtinLocalRing::truncated_poly(2, 1, 3), exactalg::ArtinLocalRing::truncated_poly(2, 1, 2)));
  const auto r = jordan();
  for (auto _ : st)
    benchmark::DoNotOptimize(defmod::smoothness_probe(defmod::Family::Full, ext, r));
}

void BM_probe_reference(benchmark::State& st)
{
  const exactalg::SquareZeroExtension ext(exactalg::RingHom::truncation(
      exactalg::ArtinLocalRing::truncated_poly(2, 1, 3), exactalg::ArtinLocalRing::truncated_poly(2, 1, 2)));
  const auto r = jordan();
  for (auto _ : st)
    benchmark::DoNotOptimize(defmod::reference::smoothness_probe(defmod::Family::Full, ext, r));
}

} // namespace

BENCHMARK(BM_enumerate_codes)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_codes_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mackey)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mackey_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiplicity_table)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiplicity_table_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_points)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate_points_reference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probe)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_probe_reference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
