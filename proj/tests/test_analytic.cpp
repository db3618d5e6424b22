#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace trilevel;
using Catch::Matchers::WithinAbs;

namespace {
double cdist(complexd a, complexd b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("state_v closed-form values") {
  const auto rest = state_v(0.0, 0.0);
  CHECK(rest.a == complexd{});
  CHECK(rest.b == 1.0);
  CHECK(rest.c == complexd{});

  const auto pi_half = state_v(std::numbers::pi / 2.0, 0.0);
  CHECK_THAT(cdist(pi_half.a, complexd(0.0, 1.0)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(pi_half.b), WithinAbs(0.0, 1e-15));
  CHECK(pi_half.c == complexd{});

  const double x = std::numbers::pi / (2.0 * std::sqrt(2.0));
  const auto split = state_v(x, x);
  CHECK_THAT(std::abs(split.b), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::norm(split.a), WithinAbs(0.5, 1e-14));
  CHECK_THAT(std::norm(split.c), WithinAbs(0.5, 1e-14));
}

TEST_CASE("state_lambda closed-form values") {
  const auto rest = state_lambda(0.0, 0.0);
  CHECK(rest.a == complexd{});
  CHECK(rest.b == 1.0);
  CHECK(rest.c == complexd{});

  // two-level reduction at theta_p = 0
  const complexd ths{0.6, 0.8};
  const auto red = state_lambda(ths, 0.0);
  CHECK_THAT(cdist(red.a, complexd(0.0, 1.0) * ths * std::sin(1.0)),
             WithinAbs(0.0, 1e-14));
  CHECK_THAT(red.b.real(), WithinAbs(std::cos(1.0), 1e-14));
  CHECK(red.c == complexd{});

  const auto both = state_lambda(1.0, 1.0);
  CHECK_THAT(both.norm_sq(), WithinAbs(1.0, 1e-14));
  const double expected_c = (std::cos(std::sqrt(2.0)) - 1.0) / 2.0;
  CHECK_THAT(both.c.real(), WithinAbs(expected_c, 1e-14));
  CHECK_THAT(both.c.real(), WithinAbs(-0.4220281526173128, 1e-12));
  CHECK_THAT(both.c.imag(), WithinAbs(0.0, 1e-15));
}

TEST_CASE("analytic states are normalized for random complex areas") {
  for (int i = 0; i < 2000; ++i) {
    const complexd s = testsup::random_complex(10.0);
    const complexd p = testsup::random_complex(10.0);
    CHECK_THAT(state_v(s, p).norm_sq(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(state_lambda(s, p).norm_sq(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("V-scheme ground population is cos^2(theta)") {
  for (int i = 0; i < 500; ++i) {
    const complexd s = testsup::random_complex(6.0);
    const complexd p = testsup::random_complex(6.0);
    const double th = effective_area(s, p);
    const double c = std::cos(th);
    CHECK_THAT(std::norm(state_v(s, p).b), WithinAbs(c * c, 1e-14));
  }
}

TEST_CASE("series branch is continuous at the threshold") {
  const double eps = 1e-4;
  for (Scheme scheme : {Scheme::V, Scheme::Lambda}) {
    const auto below = scheme == Scheme::V
                           ? state_v(eps * (1.0 - 1e-9), 0.0)
                           : state_lambda(eps * (1.0 - 1e-9), 0.0);
    const auto above = scheme == Scheme::V
                           ? state_v(eps * (1.0 + 1e-9), 0.0)
                           : state_lambda(eps * (1.0 + 1e-9), 0.0);
    CHECK_THAT(cdist(below.a, above.a), WithinAbs(0.0, 1e-10));
    CHECK_THAT(cdist(below.b, above.b), WithinAbs(0.0, 1e-10));
    CHECK_THAT(cdist(below.c, above.c), WithinAbs(0.0, 1e-10));
  }
}

TEST_CASE("phase covariance of the analytic states") {
  std::uniform_real_distribution<double> phid(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const complexd s = testsup::random_complex(4.0);
    const complexd p = testsup::random_complex(4.0);
    const double phi = phid(testsup::rng());
    const complexd rot = std::exp(complexd(0.0, phi));
    for (bool v : {true, false}) {
      const auto base = v ? state_v(s, p) : state_lambda(s, p);
      const auto turned = v ? state_v(s * rot, p) : state_lambda(s * rot, p);
      CHECK_THAT(cdist(turned.a, base.a * rot), WithinAbs(0.0, 1e-13));
      CHECK_THAT(std::abs(turned.b) - std::abs(base.b), WithinAbs(0.0, 1e-13));
      CHECK_THAT(std::abs(turned.c) - std::abs(base.c), WithinAbs(0.0, 1e-13));
    }
  }
}

TEST_CASE("RWA closed forms") {
  const auto v1 = rwa_state_v(1.0, 0.0, std::numbers::pi);
  CHECK_THAT(cdist(v1.a, complexd(0.0, 1.0)), WithinAbs(0.0, 1e-15));
  CHECK_THAT(std::abs(v1.b), WithinAbs(0.0, 1e-15));

  const auto v0 = rwa_state_v(0.0, 0.0, 3.7);
  CHECK(v0.b == 1.0);

  const auto v34 = rwa_state_v(3.0, 4.0, std::numbers::pi / 5.0);
  CHECK_THAT(std::abs(v34.b), WithinAbs(0.0, 1e-14));
  CHECK_THAT(std::norm(v34.a), WithinAbs(9.0 / 25.0, 1e-14));
  CHECK_THAT(std::norm(v34.c), WithinAbs(16.0 / 25.0, 1e-14));

  // a pure p-drive never moves population out of |b> in the Lambda solution
  const auto l0 = rwa_state_lambda(0.0, 1.3, 2.9);
  CHECK(l0.a == complexd{});
  CHECK(l0.b == 1.0);
  CHECK(l0.c == 0.0);

  const auto l1 = rwa_state_lambda(1.0, 0.0, 2.0 * std::numbers::pi);
  CHECK_THAT(l1.b.real(), WithinAbs(-1.0, 1e-14));

  const auto l2 = rwa_state_lambda(1.0, 1.0, std::sqrt(2.0) * std::numbers::pi);
  CHECK_THAT(std::abs(l2.b), WithinAbs(0.0, 1e-14));
  CHECK_THAT(l2.c.real(), WithinAbs(-1.0, 1e-14));
}

TEST_CASE("RWA forms equal the analytic states at areas Omega t / 2") {
  std::uniform_real_distribution<double> omd(0.0, 3.0),
      td(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 500; ++i) {
    const double os = omd(testsup::rng());
    const double op = omd(testsup::rng());
    const double t = td(testsup::rng());
    const auto rv = rwa_state_v(os, op, t);
    const auto sv = state_v(0.5 * os * t, 0.5 * op * t);
    CHECK_THAT(cdist(rv.a, sv.a), WithinAbs(0.0, 1e-14));
    CHECK_THAT(cdist(rv.b, sv.b), WithinAbs(0.0, 1e-14));
    CHECK_THAT(cdist(rv.c, sv.c), WithinAbs(0.0, 1e-14));
    const auto rl = rwa_state_lambda(os, op, t);
    const auto sl = state_lambda(0.5 * os * t, 0.5 * op * t);
    CHECK_THAT(cdist(rl.a, sl.a), WithinAbs(0.0, 1e-14));
    CHECK_THAT(cdist(rl.b, sl.b), WithinAbs(0.0, 1e-14));
    CHECK_THAT(cdist(rl.c, sl.c), WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("density observables from a pure state") {
  const auto bb = density_from_state({0.0, 1.0, 0.0});
  CHECK(bb.bb == 1.0);
  CHECK(bb.aa == 0.0);
  CHECK(bb.ab == complexd{});

  const auto aa = density_from_state({complexd(0.0, 1.0), 0.0, 0.0});
  CHECK(aa.aa == 1.0);

  const StateVector mix{complexd(0.5, 0.5), 1.0 / std::sqrt(2.0), 0.0};
  const auto d = density_from_state(mix);
  CHECK_THAT(cdist(d.ab, complexd(0.5, 0.5) / std::sqrt(2.0)),
             WithinAbs(0.0, 1e-15));
  CHECK_THAT(d.aa + d.bb + d.cc, WithinAbs(1.0, 1e-15));
  // pure-state Cauchy-Schwarz with equality
  CHECK_THAT(std::norm(d.ab), WithinAbs(d.aa * d.bb, 1e-15));
}

TEST_CASE("magnus2_norm vanishes for zero and commuting drives") {
  const AtomSpec atom{Scheme::V, 12.0, 10.0, {}};
  const PulseSpec zs{0.0, 3.0, EnvelopeSpec::tanh_family(0.0, 10.0),
                     CarrierMode::RealCosine};
  const PulseSpec zp{0.0, 2.0, EnvelopeSpec::tanh_family(0.0, 10.0),
                     CarrierMode::RealCosine};
  CHECK(magnus2_norm(zs, zp, atom, -15.0, 15.0, 0.01) == 0.0);

  // Resonant exponential drives with a shared envelope make H(t) a fixed
  // matrix times a scalar profile, so all commutators vanish.
  const AtomSpec atom2{Scheme::V, 5.0, 3.0, {}};
  const PulseSpec cs{0.7, 5.0, EnvelopeSpec::tanh_family(0.0, 8.0),
                     CarrierMode::RwaExponential};
  const PulseSpec cp{0.4, 3.0, EnvelopeSpec::tanh_family(0.0, 8.0),
                     CarrierMode::RwaExponential};
  CHECK_THAT(magnus2_norm(cs, cp, atom2, -12.0, 12.0, 0.01),
             WithinAbs(0.0, 1e-10));
}

TEST_CASE("magnus2_norm matches the nested-quadrature oracle and scales down "
          "with detuning") {
  const AtomSpec atom{Scheme::V, 12.0, 10.0, {}};
  const PulseSpec ps{0.6, 3.0, EnvelopeSpec::tanh_family(0.0, 10.0),
                     CarrierMode::RealCosine};
  const PulseSpec pp{0.5, 2.0, EnvelopeSpec::tanh_family(0.0, 10.0),
                     CarrierMode::RealCosine};
  const double got = magnus2_norm(ps, pp, atom, -15.0, 15.0, 0.005);
  const double oracle =
      testsup::magnus2_norm_oracle(ps, pp, atom, -15.0, 15.0, 48000);
  CHECK(got > 0.0);
  CHECK_THAT(got, Catch::Matchers::WithinRel(oracle, 1e-4));

  // Doubling every frequency doubles both detunings at fixed peak Rabi.
  // The norm at t = +15 is dominated by the secular (Stark-like) diagonal
  // of S2, which scales with 1/Delta, so the drop is a factor ~2.
  const AtomSpec atom2{Scheme::V, 24.0, 20.0, {}};
  const PulseSpec ps2{0.6, 6.0, EnvelopeSpec::tanh_family(0.0, 10.0),
                      CarrierMode::RealCosine};
  const PulseSpec pp2{0.5, 4.0, EnvelopeSpec::tanh_family(0.0, 10.0),
                      CarrierMode::RealCosine};
  const double doubled = magnus2_norm(ps2, pp2, atom2, -15.0, 15.0, 0.005);
  const double oracle2 =
      testsup::magnus2_norm_oracle(ps2, pp2, atom2, -15.0, 15.0, 48000);
  CHECK(doubled > 0.0);
  CHECK_THAT(doubled, Catch::Matchers::WithinRel(oracle2, 1e-4));
  const double ratio = got / doubled;
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);

  CHECK_THROWS_AS(magnus2_norm(ps, pp, atom, -15.0, 15.0, 0.5),
                  std::invalid_argument);
}
