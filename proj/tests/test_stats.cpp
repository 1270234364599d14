#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lwr/rng.hpp"
#include "lwr/stats.hpp"

using namespace lwr;

TEST_CASE("hill estimator on a hand computation") {
  // Order statistics e^4 > e^3 > e^2 > e^1 > 1; with k = 4 the log
  // excesses over X_(5) are 4,3,2,1 so index_hat = 4/10.
  const std::vector<double> samples = {1.0, std::exp(1.0), std::exp(2.0), std::exp(3.0),
                                       std::exp(4.0)};
  const HillEstimate est = hill_estimator(samples, 4);
  CHECK(est.index_hat == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(est.k == 4);
  CHECK(est.samples_used == 5);
}

TEST_CASE("hill estimator input validation") {
  const std::vector<double> flat = {2.0, 2.0, 2.0, 2.0};
  CHECK_THROWS_AS(hill_estimator(flat, 3), std::domain_error);
  const std::vector<double> tiny = {1.0, 2.0};
  CHECK_THROWS_AS(hill_estimator(tiny, 2), std::invalid_argument);
  CHECK_THROWS_AS(hill_estimator(tiny, 0), std::invalid_argument);
}

TEST_CASE("default hill order statistic count") {
  CHECK(default_hill_k(100) == 20);
  CHECK(default_hill_k(1000000) == 2000);
}

TEST_CASE("ks statistic edge cases") {
  const std::vector<double> a = {1.0, 2.0, 3.0};
  CHECK(ks_two_sample(a, a).statistic == 0.0);
  const std::vector<double> zero = {0.0};
  const std::vector<double> one = {1.0};
  CHECK(ks_two_sample(zero, one).statistic == 1.0);
  const KSResult r = ks_two_sample(a, one);
  CHECK(r.m == 3);
  CHECK(r.n == 1);
}

TEST_CASE("ks statistic for a shifted uniform sample") {
  RngStream rng(5, 0);
  const std::size_t n = 10000;
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = rng.uniform();
    b[i] = rng.uniform() + 0.5;
  }
  const double stat = ks_two_sample(a, b).statistic;
  CHECK(stat > 0.47);
  CHECK(stat < 0.53);
}

TEST_CASE("ks statistic symmetry and monotone-map invariance") {
  RngStream rng(6, 0);
  std::vector<double> a(3000), b(4000);
  for (double& x : a) x = rng.normal();
  for (double& x : b) x = rng.normal() + 0.2;
  const double ab = ks_two_sample(a, b).statistic;
  CHECK(ks_two_sample(b, a).statistic == ab);
  for (double& x : a) x = std::exp(x);
  for (double& x : b) x = std::exp(x);
  CHECK(ks_two_sample(a, b).statistic == doctest::Approx(ab).epsilon(1e-12));
}

TEST_CASE("mean squared displacement hand values") {
  const std::vector<double> flat1 = {1.0, -2.0, 3.0};
  CHECK(msd(flat1, 1) == doctest::Approx(14.0 / 3.0));
  const std::vector<double> flat2 = {3.0, 4.0, 0.0, 0.0};
  CHECK(msd(flat2, 2) == doctest::Approx(12.5));
}

TEST_CASE("inverse subordinator mean reference") {
  CHECK(inverse_mean_reference(0.5, 1.0) ==
        doctest::Approx(1.1283791670955126).epsilon(1e-12));
  CHECK(inverse_mean_reference(0.5, 0.0) == 0.0);
  const double a = 0.3;
  CHECK(inverse_mean_reference(a, std::pow(2.0, 1.0 / a)) ==
        doctest::Approx(2.0 / std::tgamma(1.0 + a)).epsilon(1e-12));
}
