#include <doctest.h>

#include <cmath>

#include "taskcodes/error.hpp"
#include "taskcodes/mismatch.hpp"
#include "taskcodes/random.hpp"

using namespace taskcodes;

namespace {

// Direct linear-domain evaluation of the divergence for full-support pairs.
double direct_delta(const Pmf& p, const Pmf& q, double a) {
  long double sq = 0, sp = 0, cross = 0;
  for (std::size_t x = 0; x < p.size(); ++x) {
    sq += std::pow(static_cast<long double>(q[x]), a);
    sp += std::pow(static_cast<long double>(p[x]), a);
    cross += p[x] / std::pow(static_cast<long double>(q[x]), 1.0L - a);
  }
  return static_cast<double>(std::log2(sq / std::pow(sp, 1.0L / (1.0L - a)) *
                                       std::pow(cross, a / (1.0L - a))));
}

}  // namespace

TEST_CASE("sundaresan_divergence examples") {
  const Pmf p({0.5, 0.5});
  const Pmf q({0.9, 0.1});
  for (double a : {0.3, 0.5, 2.0, 7.0}) {
    CHECK(std::abs(sundaresan_divergence(p, p, a).value) < 1e-12);
  }
  const double four_thirds = (std::sqrt(0.9) + std::sqrt(0.1)) *
                             (0.5 / std::sqrt(0.9) + 0.5 / std::sqrt(0.1)) / 2.0;
  CHECK(four_thirds == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(sundaresan_divergence(p, q, 0.5).value ==
        doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-13));
  CHECK(direct_delta(p, q, 0.5) == doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-13));

  CHECK(sundaresan_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}), 0.5).is_infinite());
  CHECK_FALSE(sundaresan_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}), 2.0).is_infinite());
  CHECK(sundaresan_divergence(Pmf({1.0, 0.0}), Pmf({0.0, 1.0}), 2.0).is_infinite());
  CHECK_FALSE(sundaresan_divergence(Pmf({1.0, 0.0}), Pmf({0.5, 0.5}), 0.5).is_infinite());

  CHECK_THROWS_AS(sundaresan_divergence(p, q, 1.0), Error);
  CHECK_THROWS_AS(sundaresan_divergence(p, Pmf::uniform(3), 0.5), Error);
}

TEST_CASE("sundaresan_divergence matches direct evaluation") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    InstanceRng rng(41, i);
    const std::size_t k = rng.between(2, 6);
    const auto p = random_pmf(rng, k);
    const auto q = random_pmf(rng, k);
    for (double a : {0.3, 0.5, 2.0, 5.0}) {
      CHECK(sundaresan_divergence(p, q, a).value ==
            doctest::Approx(direct_delta(p, q, a)).epsilon(1e-9));
    }
  }
}

TEST_CASE("renyi_divergence examples") {
  const Pmf p({0.3, 0.7});
  CHECK(std::abs(renyi_divergence(p, p, 0.5)) < 1e-14);
  CHECK(renyi_divergence(Pmf({1.0, 0.0}), Pmf({0.5, 0.5}), 0.5) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::isinf(renyi_divergence(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}), 2.0)));
  for (std::uint64_t i = 0; i < 100; ++i) {
    InstanceRng rng(42, i);
    const std::size_t k = rng.between(2, 6);
    const auto a = random_pmf(rng, k);
    const auto b = random_pmf(rng, k);
    const double kl = kl_divergence(a, b);
    CHECK(std::abs(renyi_divergence(a, b, 1.0 - 1e-4) - kl) < 1e-3);
    CHECK(std::abs(renyi_divergence(a, b, 1.0 + 1e-4) - kl) < 1e-3);
  }
  CHECK_THROWS_AS(renyi_divergence(p, p, 1.0), Error);
}

TEST_CASE("divergence_limits examples") {
  const auto u = Pmf::uniform(4);
  const auto same = divergence_limits(u, u);
  CHECK(same.at_zero == doctest::Approx(0.0));
  CHECK(same.at_one == doctest::Approx(0.0));
  CHECK(same.at_infinity == doctest::Approx(0.0));
  CHECK(same.probes_agree);

  CHECK(divergence_limits(Pmf({0.5, 0.5, 0.0, 0.0}), u).at_zero == doctest::Approx(1.0));

  const auto l = divergence_limits(Pmf({0.7, 0.3}), Pmf({0.5, 0.5}));
  CHECK(l.at_infinity == doctest::Approx(std::log2(1.4)).epsilon(1e-14));
  CHECK(l.probes_agree);

  try {
    divergence_limits(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}));
    FAIL("expected support-violation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::support_violation);
  }
}

TEST_CASE("product_additivity_check examples") {
  const Pmf p({0.5, 0.5});
  const Pmf q({0.9, 0.1});
  CHECK(product_additivity_check(p, p, 0.5, 5));
  CHECK(product_divergence(p, q, 0.5, 3) ==
        doctest::Approx(3 * std::log2(4.0 / 3.0)).epsilon(1e-12));
  CHECK(product_additivity_check(p, q, 0.5, 3));
  CHECK(product_additivity_check(p, q, 2.0, 1));
  CHECK(product_additivity_check(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}), 0.5, 3));
}

TEST_CASE("mismatched_bound examples") {
  const Pmf p({0.3, 0.2, 0.4, 0.1});
  const auto same = mismatched_bound(p, p, 6, 1.0);
  CHECK(same.divergence == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(same.bound == doctest::Approx(upper_bound(p, 6, 1.0)).epsilon(1e-12));
  CHECK(same.moment < same.bound);

  const Pmf fair({0.5, 0.5});
  const Pmf skew({0.9, 0.1});
  const auto r = mismatched_bound(fair, skew, 8, 1.0);
  const double expected = 1.0 + std::exp2(1.0 + std::log2(4.0 / 3.0) - std::log2(5.0 / 4.0));
  CHECK(r.bound == doctest::Approx(expected).epsilon(1e-12));
  CHECK(r.moment < r.bound);

  const auto v = mismatched_bound(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}), 8, 1.0);
  CHECK(std::isinf(v.bound));
  CHECK_THROWS_AS(mismatched_bound(fair, skew, 3, 1.0), Error);
}

TEST_CASE("property: mismatch dominates match") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    InstanceRng rng(43, i);
    const std::size_t k = rng.between(2, 10);
    const auto p = random_pmf(rng, k);
    const auto q = random_pmf(rng, k);
    const double rho = 0.5 + 2.0 * rng.uniform();
    const std::uint64_t m = static_cast<std::uint64_t>(std::log2(double(k)) + 3) + rng.between(0, 8);
    const auto r = mismatched_bound(p, q, m, rho);
    CHECK(r.bound >= upper_bound(p, m, rho) - 1e-12);
    CHECK(r.moment < r.bound);
  }
}

TEST_CASE("mismatched_block_experiment") {
  const Pmf fair({0.5, 0.5});
  const Pmf skew({0.9, 0.1});
  // q = p reproduces the matched experiment.
  const auto rate = Rate::parse("0.9");
  const auto a = mismatched_block_experiment(skew, skew, rate, 1.0, 10);
  const auto b = block_experiment(iid_joint(skew, 10), rate, 1.0);
  CHECK(a.moment == doctest::Approx(b.moment).epsilon(1e-12));
  CHECK(a.upper == doctest::Approx(b.upper).epsilon(1e-9));
  CHECK(*a.mismatch_exponent == doctest::Approx(renyi_rho(skew, 1.0)).epsilon(1e-9));

  const auto r = mismatched_block_experiment(fair, skew, Rate::parse("1.6"), 1.0, 12);
  CHECK(*r.mismatch_exponent == doctest::Approx(1.0 + std::log2(4.0 / 3.0)).epsilon(1e-9));
  CHECK(r.moment < r.upper);
}
