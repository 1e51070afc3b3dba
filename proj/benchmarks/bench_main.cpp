#include <benchmark/benchmark.h>

#include "berkdyn/dynamics.hpp"
#include "berkdyn/families.hpp"
#include "berkdyn/parse.hpp"
#include "berkdyn/series.hpp"

using namespace berkdyn;

namespace {

RationalMap quad(const FieldPtr& F, const mpq_class& c) {
  return RationalMap::from_rational(F, QPoly({c, 0, 1}), QPoly({1}));
}

void BM_PadicMul(benchmark::State& st) {
  auto F = Field::create(3, st.range(0));
  PadicScalar x = PadicScalar(F, 13L).sqrt(), y = PadicScalar(F, mpq_class(-1, 9));
  for (auto _ : st) benchmark::DoNotOptimize(x * y + x);
}
BENCHMARK(BM_PadicMul)->Arg(20)->Arg(60)->Arg(200);

void BM_PadicSqrt(benchmark::State& st) {
  auto F = Field::create(3, st.range(0));
  PadicScalar x(F, 13L);
  for (auto _ : st) benchmark::DoNotOptimize(x.sqrt());
}
BENCHMARK(BM_PadicSqrt)->Arg(20)->Arg(60)->Arg(200);

void BM_PeriodicPoints(benchmark::State& st) {
  auto F = Field::create(3);
  auto f = quad(F, mpq_class(-1, 9));
  for (auto _ : st) benchmark::DoNotOptimize(periodic_points(f, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_PeriodicPoints)->DenseRange(1, 4);

void BM_PushDiscPoint(benchmark::State& st) {
  auto F = Field::create(3);
  auto f = quad(F, mpq_class(-1, 9)).iterate(3);
  BerkPoint xi = BerkPoint::disc(PadicScalar(F, 2L), RadiusExp(mpq_class(1, 2), mpq_class(1, 3)));
  for (auto _ : st) benchmark::DoNotOptimize(push_disc_point(f, xi));
}
BENCHMARK(BM_PushDiscPoint);

void BM_CantorCoding(benchmark::State& st) {
  auto F = Field::create(3);
  PadicScalar lam(F, mpq_class(-1, 9));
  const std::string word(static_cast<std::size_t>(st.range(0)), '1');
  for (auto _ : st) benchmark::DoNotOptimize(cantor_coding(lam, word));
}
BENCHMARK(BM_CantorCoding)->Arg(4)->Arg(8)->Arg(16);

void BM_MultiplierPolynomial(benchmark::State& st) {
  auto fam = parse_family("z^2 + l");
  for (auto _ : st) benchmark::DoNotOptimize(multiplier_polynomial(fam, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_MultiplierPolynomial)->DenseRange(1, 3);

void BM_StabilityScan(benchmark::State& st) {
  auto F = Field::create(3);
  auto fam = parse_family("z^2 + l");
  std::vector<BerkPoint> pts;
  for (long k = 0; k < 8; ++k) {
    pts.push_back(BerkPoint::disc(PadicScalar::zero(F), RadiusExp(-k)));
    pts.push_back(BerkPoint::type1(PadicScalar(F, mpq_class(-(1 + 3 * k), 9))));
  }
  for (auto _ : st) benchmark::DoNotOptimize(stability_scan(fam, 2, pts, {.jobs = static_cast<int>(st.range(0))}));
}
BENCHMARK(BM_StabilityScan)->Arg(1)->Arg(4)->UseRealTime();

void BM_ZeroCount(benchmark::State& st) {
  auto F = Field::create(3, 40);
  std::map<int, PadicScalar> c;
  for (int k = -8; k <= 8; ++k) c.emplace(k, PadicScalar(F, static_cast<long>(k * k + 1)) * PadicScalar::pi_pow(F, (k * 7) % 5));
  auto psi = LaurentSegment::make(PadicScalar::zero(F), c, RadiusExp(3), RadiusExp(-3));
  for (auto _ : st) benchmark::DoNotOptimize(zero_count(psi));
}
BENCHMARK(BM_ZeroCount);

}  // namespace

BENCHMARK_MAIN();
