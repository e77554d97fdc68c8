#include <benchmark/benchmark.h>

#include <random>

#include "thetaforge/thetaforge.hpp"

namespace tf = thetaforge;

namespace {

void BM_ThetaCycle(benchmark::State& state) {
  const auto g = tf::cycle_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tf::theta_bar(g, tf::ThetaKind::Lovasz).value);
}
BENCHMARK(BM_ThetaCycle)->Arg(5)->Arg(11)->Arg(21)->Unit(benchmark::kMillisecond);

void BM_ThetaPetersen(benchmark::State& state) {
  const auto g = tf::petersen_graph();
  const auto kind = static_cast<tf::ThetaKind>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tf::theta_bar(g, kind).value);
}
BENCHMARK(BM_ThetaPetersen)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_ThetaRandom(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto g = tf::random_graph(static_cast<int>(state.range(0)), 0.5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(tf::theta_bar(g, tf::ThetaKind::Schrijver).value);
}
BENCHMARK(BM_ThetaRandom)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Eig(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto g = tf::random_graph(static_cast<int>(state.range(0)), 0.5, rng);
  const auto a = tf::adjacency_matrix(g);
  for (auto _ : state) benchmark::DoNotOptimize(tf::eig(a));
}
BENCHMARK(BM_Eig)->Arg(64)->Arg(320);

void BM_CertificateB(benchmark::State& state) {
  const auto g = tf::complete_graph(2);
  const auto h = tf::cycle_graph(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tf::construct_certificate_B(g, h));
}
BENCHMARK(BM_CertificateB)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_VerifyCertificate(benchmark::State& state) {
  const auto g = tf::complete_graph(5);
  const auto h = tf::complement(tf::schrijver_graph());
  const auto cert = tf::construct_certificate_B(g, h);
  for (auto _ : state) benchmark::DoNotOptimize(tf::verify_certificate(cert, g, h).passed);
}
BENCHMARK(BM_VerifyCertificate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
