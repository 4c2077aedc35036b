#include <doctest.h>

#include <cmath>
#include <vector>

#include "taskcodes/error.hpp"
#include "taskcodes/probability.hpp"
#include "taskcodes/random.hpp"

using namespace taskcodes;

namespace {

// Independent oracle: sum over tuples of (product of linear masses)^alpha.
double enumerated_markov_renyi(const MarkovSource& src, double alpha, unsigned n) {
  const std::size_t k = src.states();
  std::size_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= k;
  long double total = 0.0L;
  std::vector<std::size_t> tuple(n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rest = idx;
    for (unsigned i = n; i-- > 0;) {
      tuple[i] = rest % k;
      rest /= k;
    }
    long double mass = src.initial()[tuple[0]];
    for (unsigned i = 1; i < n; ++i) mass *= src.transition(tuple[i - 1], tuple[i]);
    if (mass > 0) total += std::pow(mass, static_cast<long double>(alpha));
  }
  return static_cast<double>(std::log2(total) / (1.0L - alpha));
}

}  // namespace

TEST_CASE("pmf construction normalizes within the window and rejects the rest") {
  const Pmf p({0.5, 0.5 + 5e-10});
  CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(Pmf({0.5, 0.6}), Error);
  CHECK_THROWS_AS(Pmf({}), Error);
  CHECK_THROWS_AS(Pmf({1.5, -0.5}), Error);
  CHECK(Pmf({1.0, 0.0}).support_size() == 1);
  const auto lm = Pmf({1.0, 0.0}).log_masses();
  CHECK(lm[0] == 0.0);
  CHECK(std::isinf(lm[1]));
}

TEST_CASE("renyi_entropy examples") {
  CHECK(renyi_entropy(Pmf::uniform(4), 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(renyi_entropy(Pmf({0.5, 0.5}), 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  const double oracle =
      static_cast<double>(2.0L * std::log2(std::sqrt(0.9L) + std::sqrt(0.1L)));
  CHECK(renyi_entropy(Pmf({0.9, 0.1}), 0.5) == doctest::Approx(oracle).epsilon(1e-13));
  CHECK(oracle == doctest::Approx(0.67807).epsilon(1e-5));

  CHECK_THROWS_AS(renyi_entropy(Pmf::uniform(2), 1.0), Error);
  CHECK_THROWS_AS(renyi_entropy(Pmf::uniform(2), 0.0), Error);
  CHECK_THROWS_AS(renyi_entropy(Pmf::uniform(2), -2.0), Error);
  try {
    renyi_entropy(Pmf::uniform(2), 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_alpha);
  }
}

TEST_CASE("renyi_rho wraps the order 1/(1+rho)") {
  CHECK(renyi_rho(Pmf::uniform(8), 1.0) == doctest::Approx(3.0).epsilon(1e-14));
  const Pmf p({0.9, 0.1});
  CHECK(renyi_rho(p, 1.0) == renyi_entropy(p, 0.5));
  CHECK(renyi_rho(p, 1.0) == doctest::Approx(0.67807).epsilon(1e-5));
  try {
    renyi_rho(p, 0.0);
    FAIL("expected invalid-rho");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_rho);
  }
}

TEST_CASE("iid_joint examples") {
  const auto fair = iid_joint(Pmf({0.5, 0.5}), 3);
  REQUIRE(fair.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) CHECK(fair.log_mass(i) == -3.0);

  const auto pair = iid_joint(Pmf({0.9, 0.1}), 2);
  const std::size_t t01[] = {0, 1};
  CHECK(pair.mass(pair.index_of(t01)) == doctest::Approx(0.09).epsilon(1e-14));

  const auto five = iid_joint(Pmf({0.9, 0.1}), 5);
  CHECK(renyi_entropy(five, 0.5) ==
        doctest::Approx(5 * renyi_entropy(Pmf({0.9, 0.1}), 0.5)).epsilon(1e-12));
  CHECK(renyi_entropy(five, 0.5) == doctest::Approx(3.39035).epsilon(1e-5));

  try {
    iid_joint(Pmf::uniform(4), 12, 1 << 20);
    FAIL("expected cap-exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::cap_exceeded);
  }
}

TEST_CASE("markov_joint examples") {
  const MarkovSource frozen(Pmf::uniform(2), {1.0, 0.0, 0.0, 1.0});
  const auto law = markov_joint(frozen, 4);
  for (std::size_t i = 0; i < law.size(); ++i) {
    const bool constant = i == 0 || i == 15;
    CHECK(law.mass(i) == doctest::Approx(constant ? 0.5 : 0.0));
  }

  const Pmf p({0.2, 0.5, 0.3});
  const auto a = markov_joint(MarkovSource::iid(p), 4);
  const auto b = iid_joint(p, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.log_mass(i) == doctest::Approx(b.log_mass(i)).epsilon(1e-13));
  }

  const auto sticky = markov_joint(MarkovSource::sticky(2, 0.9), 2);
  CHECK(sticky.mass(0) == doctest::Approx(0.45).epsilon(1e-14));
}

TEST_CASE("markov_renyi_sum examples") {
  const Pmf p({0.6, 0.3, 0.1});
  for (double alpha : {0.3, 0.5, 2.0}) {
    CHECK(markov_renyi_sum(MarkovSource::iid(p), alpha, 7) ==
          doctest::Approx(7 * renyi_entropy(p, alpha)).epsilon(1e-12));
  }
  const MarkovSource frozen(Pmf::uniform(3),
                            {1, 0, 0, 0, 1, 0, 0, 0, 1});
  for (unsigned n : {1u, 5u, 50u}) {
    CHECK(markov_renyi_sum(frozen, 0.5, n) == doctest::Approx(std::log2(3.0)));
  }
  const auto sticky = MarkovSource::sticky(2, 0.9);
  CHECK(std::abs(markov_renyi_sum(sticky, 0.5, 10) -
                 enumerated_markov_renyi(sticky, 0.5, 10)) < 1e-9);
  CHECK_THROWS_AS(markov_renyi_sum(sticky, 1.0, 3), Error);
  // Long blocks stay finite in the log domain.
  const double h = markov_renyi_sum(sticky, 0.5, 2000);
  CHECK(std::isfinite(h));
  CHECK(h / 2000 == doctest::Approx(2 * std::log2(std::sqrt(0.9) + std::sqrt(0.1)))
                        .epsilon(1e-3));
}

TEST_CASE("kl_divergence examples") {
  const Pmf p({0.5, 0.5});
  CHECK(kl_divergence(p, p) == 0.0);
  CHECK(std::isinf(kl_divergence(Pmf({1.0, 0.0}), Pmf({0.0, 1.0}))));
  const double oracle = 0.5 * std::log2(0.5 / 0.9) + 0.5 * std::log2(0.5 / 0.1);
  CHECK(kl_divergence(p, Pmf({0.9, 0.1})) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(oracle == doctest::Approx(0.73697).epsilon(1e-5));
  CHECK_THROWS_AS(kl_divergence(p, Pmf::uniform(3)), Error);
}

TEST_CASE("property: renyi additivity over iid products") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    InstanceRng rng(11, i);
    const auto p = random_pmf(rng, rng.between(2, 5));
    const unsigned n = static_cast<unsigned>(rng.between(1, 6));
    const double alpha = 0.1 + 2.5 * rng.uniform();
    if (alpha == 1.0) continue;
    CHECK(std::abs(renyi_entropy(iid_joint(p, n), alpha) - n * renyi_entropy(p, alpha)) <=
          1e-9 * n);
  }
}

TEST_CASE("property: uniform maximizes and entropy is non-increasing in alpha") {
  const std::vector<double> grid = {0.05, 0.2, 0.5, 0.8, 0.99, 1.01, 1.5, 3.0, 10.0};
  for (std::uint64_t i = 0; i < 200; ++i) {
    InstanceRng rng(12, i);
    const std::size_t k = rng.between(2, 8);
    const auto p = random_pmf(rng, k);
    double previous = INFINITY;
    for (double alpha : grid) {
      const double h = renyi_entropy(p, alpha);
      CHECK(h <= std::log2(static_cast<double>(k)) + 1e-12);
      CHECK(h <= previous + 1e-12);
      previous = h;
    }
  }
  for (double alpha : grid) {
    CHECK(renyi_entropy(Pmf::uniform(6), alpha) == doctest::Approx(std::log2(6.0)));
  }
}

TEST_CASE("property: Markov DP matches enumeration") {
  for (std::uint64_t i = 0; i < 30; ++i) {
    InstanceRng rng(13, i);
    const auto src = random_markov(rng, rng.between(2, 4));
    const double alpha = rng.between(0, 1) ? 0.5 : 2.0;
    const unsigned max_n = src.states() == 4 ? 9 : 12;
    for (unsigned n = 1; n <= max_n; n += 4) {
      const double dp = markov_renyi_sum(src, alpha, n);
      CHECK(std::abs(dp - enumerated_markov_renyi(src, alpha, n)) < 1e-9);
      CHECK(std::abs(dp - renyi_entropy(markov_joint(src, n), alpha)) < 1e-9);
    }
  }
}
