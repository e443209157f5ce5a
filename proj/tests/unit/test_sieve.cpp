#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "minf/sieve.hpp"

using namespace minf;

namespace {

ScanOptions options(ArithKind kind, std::uint64_t x_max, std::uint64_t every, int threads = 0,
                    std::uint64_t segment = kMinSegmentSize) {
  ScanOptions o;
  o.kind = kind;
  o.x_max = x_max;
  o.checkpoint_every = every;
  o.threads = threads;
  o.segment_size = segment;
  return o;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("minf_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("partial sums of mu_inf to 10") {
  const std::int64_t expected[] = {1, 0, -1, -2, -3, -2, -3, -2, -3, -2};
  const auto recs = scan_records(options(ArithKind::MuInf, 10, 1));
  REQUIRE(recs.size() == 10);
  for (int i = 0; i < 10; ++i) {
    CHECK(recs[i].x == static_cast<std::uint64_t>(i + 1));
    CHECK(recs[i].msum == expected[i]);
  }
  CHECK(recs.back().min_ratio == doctest::Approx(-3 / std::sqrt(5.0)).epsilon(1e-15));
  CHECK(recs.back().argmin == 5);
  CHECK(recs.back().max_ratio == 1);
  CHECK(recs.back().argmax == 1);
}

TEST_CASE("classical Mertens values") {
  CHECK(scan(options(ArithKind::Mu, 10, 10)).msum == -1);
  CHECK(scan(options(ArithKind::Mu, 100, 100)).msum == 1);
  CHECK(scan(options(ArithKind::Mu, 1000000, 1000000)).msum == 212);
  CHECK(scan(options(ArithKind::MuInf, 1, 1)).msum == 1);
}

TEST_CASE("weak Mertens integral oracle") {
  CHECK(weak_mertens(2).integral == doctest::Approx(0.5).epsilon(1e-15));
  const auto wm = weak_mertens(10);
  CHECK(wm.integral == doctest::Approx(1.4948412698412698413).epsilon(1e-15));
  CHECK(wm.over_log == doctest::Approx(0.64920131481331334713).epsilon(1e-15));
  CHECK_THROWS_AS(weak_mertens(1), std::invalid_argument);
}

TEST_CASE("omega probe oracle") {
  const auto p = omega_probe(10);
  CHECK(p.sup == doctest::Approx(1.3416407864998738178).epsilon(1e-15));
  CHECK(p.argmax == 5);
  const auto one = omega_probe(1);
  CHECK(one.sup == 1.0);
  CHECK(one.argmax == 1);
}

TEST_CASE("sieve_values against pointwise") {
  for (ArithKind kind : kAllArithKinds) {
    const auto v = sieve_values(kind, 1, 5000);
    for (std::uint64_t n = 1; n <= 5000; ++n) REQUIRE(v[n - 1] == static_cast<std::int64_t>(pointwise(kind, n)));
  }
  const std::uint64_t lo = 1'000'000'000'000ULL;
  for (ArithKind kind : {ArithKind::Mu, ArithKind::MuInf, ArithKind::TauInf}) {
    const auto v = sieve_values(kind, lo, lo + 3000);
    for (std::uint64_t i = 0; i <= 3000; ++i) REQUIRE(v[i] == static_cast<std::int64_t>(pointwise(kind, lo + i)));
  }
}

TEST_CASE("sieve vs pointwise on 1e4 random samples") {
  const std::uint64_t x_max = 4'000'000;
  const auto v = sieve_values(ArithKind::MuInf, 1, x_max);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t n = 1 + rng() % x_max;
    REQUIRE(v[n - 1] == mu_infinity(n));
  }
}

TEST_CASE("consecutive partial sums differ by one") {
  std::int64_t prev = 0;
  std::uint64_t seen = 0;
  scan(options(ArithKind::MuInf, 300000, 1), [&](const SummatoryRecord& r, const ScanState&) {
    if (r.x >= 2) REQUIRE(std::llabs(r.msum - prev) == 1);
    prev = r.msum;
    ++seen;
  });
  CHECK(seen == 300000);
}

TEST_CASE("segment-size invariance") {
  for (ArithKind kind : {ArithKind::MuInf, ArithKind::Mu}) {
    const auto a = scan_records(options(kind, 3'000'000, 250'000, 0, std::uint64_t{1} << 16));
    const auto b = scan_records(options(kind, 3'000'000, 250'000, 0, std::uint64_t{1} << 20));
    CHECK(a.size() == 12);
    CHECK(a == b);
  }
}

TEST_CASE("parallel determinism and agreement with the serial reference") {
  const auto o1 = options(ArithKind::MuInf, 2'000'000, 100'000, 1);
  const auto o4 = options(ArithKind::MuInf, 2'000'000, 100'000, 4);
  const auto serial = reference::scan_records(o1);
  CHECK(scan_records(o1) == serial);
  CHECK(scan_records(o4) == serial);
  CHECK(scan(o4) == scan(o1));
  const auto ref_tau = reference::scan_records(options(ArithKind::TauInf, 500'000, 50'000));
  CHECK(scan_records(options(ArithKind::TauInf, 500'000, 50'000, 3)) == ref_tau);
}

TEST_CASE("resume equivalence at 1e7 through a checkpoint file") {
  const auto path = temp_path("resume.ckpt");
  const auto full = scan(options(ArithKind::MuInf, 10'000'000, 1'000'000));
  scan(options(ArithKind::MuInf, 5'000'000, 1'000'000), [&](const SummatoryRecord&, const ScanState& st) {
    save_checkpoint(path, st);
  });
  const auto loaded = load_checkpoint(path);
  CHECK(loaded.x == 5'000'000);
  std::vector<SummatoryRecord> tail;
  const auto resumed = scan(options(ArithKind::MuInf, 10'000'000, 1'000'000),
                            [&](const SummatoryRecord& r, const ScanState&) { tail.push_back(r); }, loaded);
  CHECK(resumed == full);
  CHECK(tail.size() == 5);
  CHECK(tail.front().x == 6'000'000);
  std::filesystem::remove(path);
}

TEST_CASE("resume validation") {
  const auto st = scan(options(ArithKind::MuInf, 200'000, 100'000));
  CHECK_THROWS_AS(scan(options(ArithKind::Mu, 300'000, 100'000), {}, st), CheckpointMismatch);
  CHECK_THROWS_AS(scan(options(ArithKind::MuInf, 100'000, 100'000), {}, st), CheckpointMismatch);
  CHECK_THROWS_AS(scan(options(ArithKind::MuInf, 300'000, 100'000, 0, std::uint64_t{1} << 17), {}, st),
                  CheckpointMismatch);
  CHECK_THROWS_AS(scan(options(ArithKind::MuInf, 1000, 10, 0, 1000)), std::invalid_argument);
  CHECK_THROWS_AS(scan(options(ArithKind::MuInf, 0, 10)), std::invalid_argument);
}

TEST_CASE("checkpoint round trip and corrupt files") {
  const auto path = temp_path("rt.ckpt");
  const auto st = scan(options(ArithKind::MuInf, 123'457, 1000));
  save_checkpoint(path, st);
  CHECK(load_checkpoint(path) == st);
  {
    std::ofstream out(path);
    out << "mu_inf,10,-2,65536\n1,1\n";
  }
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_checkpoint(path), std::runtime_error);
}

TEST_CASE("sup ratio stays below the trivial bound") {
  const auto st = scan(options(ArithKind::MuInf, 1'000'000, 1'000'000));
  const auto p = omega_probe(st);
  CHECK(p.sup >= 1.0);
  CHECK(p.sup <= 1000.0);
  CHECK(p == omega_probe(1'000'000));
}
