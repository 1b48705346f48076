#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirac/bounds.hpp"
#include "support.hpp"

using namespace dirac;

namespace {

EnclosureParams params_for(const PeriodicPotential& pot, double h) {
  const auto norms = sup_norms(pot);
  return enclosure_params(norms, detect_symmetries(pot, norms), h);
}

PeriodicPotential cos_pot() { return PeriodicPotential::fourier({{-1, 0.5}, {1, 0.5}}, {{-1, 0.5}, {1, 0.5}}); }

SpectrumArcs traced(const PeriodicPotential& pot, double h, const Window& w, int nx, int ny) {
  return trace_spectrum(discriminant_field(pot, h, w, nx, ny));
}

}  // namespace

TEST_CASE("enclosure constants") {
  SUBCASE("Fig. 2 parameters") {
    const auto p = params_for(PeriodicPotential::constant(1.0, Complex(0, 16)), 1.0);
    CHECK(p.B1 == doctest::Approx(4.0));
    CHECK(p.C_h == doctest::Approx(8.0));
    CHECK_FALSE(p.c_h.has_value());
    CHECK(p.c0 == 0.0);
    CHECK_FALSE(p.pq_real);
  }
  SUBCASE("cos potential at h = 0.1") {
    const auto p = params_for(cos_pot(), 0.1);
    CHECK(p.B1 == doctest::Approx(1.0));
    CHECK(p.C_h == doctest::Approx(0.05 * 4 * kPi).epsilon(1e-10));
    REQUIRE(p.c_h.has_value());
    CHECK(*p.c_h == doctest::Approx(0.05 * 2 * kPi).epsilon(1e-10));
    CHECK(p.c0 == doctest::Approx(kPi).epsilon(1e-10));
  }
  SUBCASE("C(h) vanishes linearly as h -> 0 when pq is real") {
    const auto a = params_for(cos_pot(), 1e-3), b = params_for(cos_pot(), 1e-6);
    CHECK(a.C_h == doctest::Approx(1000 * b.C_h).epsilon(1e-9));
    CHECK(b.C_h < 1e-5);
  }
  CHECK_THROWS_AS(params_for(cos_pot(), 0.0), std::invalid_argument);
}

TEST_CASE("property: c(h) <= C(h) and all constants nonnegative") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> hh(0.01, 2.0);
  for (int t = 0; t < 40; ++t) {
    // Real coefficients on symmetric modes give pq real only sometimes; force it on half the draws.
    auto pot = ref::random_trig(rng, 2.0);
    if (t % 2 == 0) pot = PeriodicPotential::fourier(pot.p_modes(), pot.p_modes());
    const auto norms = sup_norms(pot, 512);
    SymmetryFlags flags = detect_symmetries(pot, norms);
    flags.pq_real = true;  // exercise the ordering regardless of the hypothesis
    const auto p = enclosure_params(norms, flags, hh(rng));
    CHECK(p.B1 >= 0.0);
    CHECK(p.C_h >= 0.0);
    CHECK(p.c0 >= 0.0);
    REQUIRE(p.c_h.has_value());
    CHECK(*p.c_h <= p.C_h * (1 + 1e-15));
  }
}

TEST_CASE("membership in the enclosure") {
  const auto p = params_for(PeriodicPotential::constant(1.0, Complex(0, 16)), 1.0);
  CHECK(in_lambda(5.0, p));
  CHECK_FALSE(in_lambda({1, 5}, p));
  CHECK_FALSE(in_lambda({3, 3}, p));
  CHECK(in_lambda({2, 3}, p));
}

TEST_CASE("distance to the cross") {
  CHECK(cross_distance(3.0, 4.0) == 0.0);
  CHECK(cross_distance({0, 2}, 4.0) == 0.0);
  CHECK(cross_distance({0, 5}, 4.0) == doctest::Approx(1.0));
  CHECK(cross_distance({1, 1}, 4.0) == doctest::Approx(1.0));
  CHECK(cross_distance({3, 6}, 4.0) == doctest::Approx(std::hypot(3.0, 2.0)));
}

TEST_CASE("threshold h0") {
  CHECK(h_threshold(0.1, 2 * kPi * kPi) == doctest::Approx(2.5330295910584445e-4));
  CHECK(h_threshold(1.0, 0.5) == doctest::Approx(1.0));
  CHECK(std::isinf(h_threshold(0.3, 0.0)));
}

TEST_CASE("certification") {
  SUBCASE("free operator passes") {
    const auto pot = PeriodicPotential::constant(0.0, 0.0);
    const auto r = certify(traced(pot, 1.0, {-5, 5, -1, 1}, 41, 9), params_for(pot, 1.0), 0.3);
    CHECK(r.max_strip_violation <= kReportTol);
    CHECK(r.max_hyperbola_violation <= kReportTol);
    CHECK(r.max_cross_distance < 1e-6);
    CHECK(r.strip == Verdict::Pass);
    CHECK(r.hyperbola == Verdict::Pass);
    CHECK(r.cross == Verdict::Pass);  // c0 = 0 makes every h admissible
    CHECK(std::isinf(r.h0_for_delta));
  }
  SUBCASE("focusing reduction attains the strip") {
    const auto pot = PeriodicPotential::constant({-1, -1}, {1, -1});
    const auto p = params_for(pot, 1.0);
    CHECK(p.B1 == doctest::Approx(std::sqrt(2.0)));
    const auto arcs = traced(pot, 1.0, {-3, 3, -2, 2}, 121, 81);
    const auto r = certify(arcs, p, 0.3);
    CHECK(r.max_strip_violation <= 1e-6);
    double top = 0;
    for (Complex z : arcs.points()) top = std::max(top, std::abs(z.imag()));
    CHECK(top == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
  }
  SUBCASE("Fig. 2 spectrum leaves the cross") {
    const auto pot = PeriodicPotential::constant(1.0, Complex(0, 16));
    const auto r = certify(traced(pot, 1.0, {-6, 6, -5, 5}, 100, 100), params_for(pot, 1.0), 0.3);
    CHECK(r.max_cross_distance == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(r.strip == Verdict::Pass);
    CHECK(r.hyperbola == Verdict::Pass);
    CHECK(r.cross == Verdict::NotApplicable);
  }
  SUBCASE("mismatched h") {
    const auto pot = PeriodicPotential::constant(0.0, 0.0);
    CHECK_THROWS_AS(certify(traced(pot, 1.0, {-1, 1, -1, 1}, 9, 9), params_for(pot, 0.5), 0.3), MismatchedH);
  }
  SUBCASE("violations are normalized by 1 + |z|^2") {
    SpectrumArcs a;
    a.h = 1.0;
    a.arcs = {{{Complex(1.0, 3.0), 0.0, false}}};
    EnclosureParams p;
    p.B1 = 2.0;
    p.C_h = 1.0;
    const auto r = certify(a, p, 0.3);
    CHECK(r.max_strip_violation == doctest::Approx(1.0 / 11.0));
    CHECK(r.max_hyperbola_violation == doctest::Approx(2.0 / 11.0));
    CHECK(r.strip == Verdict::Fail);
  }
}

TEST_CASE("enclosure curves stay on the boundary") {
  const auto p = params_for(PeriodicPotential::constant(1.0, Complex(0, 16)), 1.0);
  const auto c = enclosure_curves(p, {-6, 6, -5, 5});
  CHECK(c.strip.size() == 2);
  CHECK(c.hyperbola.size() == 4);
  for (const auto& branch : c.hyperbola)
    for (Complex z : branch) CHECK(std::abs(z.real() * z.imag()) == doctest::Approx(8.0));
  CHECK(c.cross.size() == 2);
}
