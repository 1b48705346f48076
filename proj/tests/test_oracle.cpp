#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dirac/oracle.hpp"
#include "dirac/transfer.hpp"
#include "support.hpp"

using namespace dirac;

TEST_CASE("lambda") {
  const ConstantModel fig2(1.0, Complex(0, 16), 1.0);
  CHECK(std::norm(const_lambda(fig2, 2 * std::sqrt(2.0) * Complex(1, 1))) < 1e-14);
  const ConstantModel two(1.0, 2.0, 1.0);
  CHECK(std::abs(const_lambda(two, 0.0) - Complex(0, std::sqrt(2.0))) < 1e-15);
  const ConstantModel free(0.0, 0.0, 1.0);
  CHECK(const_lambda(free, Complex(0.3, -0.2)) == Complex(0.3, -0.2));
}

TEST_CASE("discriminant") {
  const ConstantModel free(0.0, 0.0, 1.0);
  CHECK(std::abs(const_discriminant(free, Complex(0.4, 0.3)) - std::cos(Complex(0.4, 0.3))) < 1e-15);
  CHECK(const_discriminant(ConstantModel(1.0, 2.0, 1.0), 0.0).real() == doctest::Approx(2.178183556608571));
  for (double h : {1.0, 0.3, 0.01}) {
    const ConstantModel m(1.0, Complex(0, 16), h);
    CHECK(std::abs(const_discriminant(m, 2 * std::sqrt(2.0) * Complex(1, 1)) - 1.0) < 1e-10);
  }
  SUBCASE("branch invariance") {
    const ConstantModel m(Complex(1, 1), Complex(0.5, -2), 0.7);
    for (Complex z : {Complex(1, 2), Complex(-3, 0.1), Complex(0, -1)}) {
      const Complex lam = const_lambda(m, z);
      CHECK(std::cos(lam / m.h) == std::cos(-lam / m.h));
    }
  }
  SUBCASE("matches the reference trace for Fig. 2 values") {
    CHECK(std::abs(const_discriminant(ConstantModel(1.0, Complex(0, 16), 1.0), 0.0) -
                   Complex(-8.076090401898767, 2.5970021097090856)) < 1e-12);
  }
}

TEST_CASE("eigenframe monodromy") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 100; ++t) {
    const ConstantModel m({u(rng), u(rng)}, {u(rng), u(rng)}, 0.25 + std::abs(u(rng)) / 3);
    const Complex z(u(rng), u(rng));
    const Mat2 M = const_monodromy(m, z);
    CHECK(std::abs(0.5 * M.trace() - const_discriminant(m, z)) < 1e-12 * (1 + std::abs(M.trace())));
    CHECK(std::abs(M.det() - 1.0) < 1e-12);
  }
  const Mat2 F = const_monodromy(ConstantModel(0.0, 0.0, 2.0), 1.0);
  CHECK(std::abs(F.a - std::exp(Complex(0, 0.5))) < 1e-15);
}

TEST_CASE("canonical monodromy matches the matrix exponential") {
  const std::pair<Complex, Complex> pqs[] = {
      {1.0, {0, 16}}, {{1, 1}, {1, -1}}, {{-1, -1}, {1, -1}}, {0.0, 0.0}, {0.0, 2.0}, {{0, 3}, 0.0}};
  for (auto [p, q] : pqs)
    for (double h : {1.0, 0.5, 0.25})
      for (Complex z : {Complex(0.3, 0.2), Complex(-4, 1), Complex(5, -4.5)}) {
        const Mat2 M = const_canonical_monodromy(ConstantModel(p, q, h), z);
        CHECK(ref::rel_diff(M, ref::constant_monodromy(p, q, z, h)) < 1e-10);
      }
}

TEST_CASE("fundamental matrix is P at x = 0 and P M at x = 1") {
  const ConstantModel m(Complex(1, 1), Complex(1, -1), 0.5);
  const Complex z(0.7, 0.3);
  const Mat2 P = const_eigenvectors(m, z);
  CHECK(rel_frobenius(const_fundamental(m, z, 0.0), P, P) < 1e-15);
  const Mat2 F1 = const_fundamental(m, z, 1.0);
  CHECK(rel_frobenius(F1, P * const_monodromy(m, z), F1) < 1e-14);
}

TEST_CASE("degenerate frames") {
  CHECK_THROWS_AS(const_eigenvectors(ConstantModel(0.0, 1.0, 1.0), 1.0), DegenerateFrame);
  CHECK_THROWS_AS(const_eigenvectors(ConstantModel(1.0, 0.0, 1.0), 1.0), DegenerateFrame);
  CHECK_THROWS_AS(const_canonical_monodromy(ConstantModel(1.0, 1.0, 1.0), 1.0), DegenerateFrame);
  // Near-cancelling z + lambda is formed through the partner root.
  const ConstantModel small(1e-8, 1e-8, 1.0);
  const Mat2 P = const_eigenvectors(small, -5.0);
  CHECK(std::isfinite(std::abs(P.b)));
}

TEST_CASE("membership for the NLS reductions") {
  const ConstantModel defocus(Complex(1, 1), Complex(1, -1), 1.0);
  CHECK(const_spectrum_membership(defocus, 1.5, 1e-9));
  CHECK(const_spectrum_membership(defocus, -2.0, 1e-9));
  CHECK_FALSE(const_spectrum_membership(defocus, 0.0, 1e-9));
  CHECK_FALSE(const_spectrum_membership(defocus, 1.4, 1e-9));

  const ConstantModel focus(Complex(-1, -1), Complex(1, -1), 1.0);
  CHECK(const_spectrum_membership(focus, Complex(0, 1), 1e-9));
  CHECK(const_spectrum_membership(focus, 0.3, 1e-9));
  CHECK(const_spectrum_membership(focus, 7.0, 1e-9));
  CHECK_FALSE(const_spectrum_membership(focus, Complex(0, 2), 1e-9));

  const ConstantModel free(0.0, 0.0, 1.0);
  CHECK(const_spectrum_membership(free, 2.5, 1e-9));
  CHECK_FALSE(const_spectrum_membership(free, Complex(2.5, 0.1), 1e-9));
}

TEST_CASE("reduction spectra on a 1-D axis scan") {
  const ConstantModel defocus(Complex(1, 1), Complex(1, -1), 1.0);
  const ConstantModel focus(Complex(-1, -1), Complex(1, -1), 1.0);
  const double r = std::sqrt(2.0);
  for (int k = -3000; k <= 3000; ++k) {
    const double s = k * 1e-3;
    if (std::abs(std::abs(s) - r) < 2e-3) continue;
    CHECK(const_spectrum_membership(defocus, s, 1e-9) == (std::abs(s) >= r));
    CHECK(const_spectrum_membership(focus, Complex(0, s), 1e-9) == (std::abs(s) <= r));
  }
}

TEST_CASE("membership set does not depend on h") {
  const ConstantModel a(1.0, Complex(0, 16), 1.0), b(1.0, Complex(0, 16), 0.5);
  const double tol = 1e-6;
  int compared = 0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const Complex z(-6 + 12.0 * i / 63, -5 + 10.0 * j / 63);
      const Complex da = const_discriminant(a, z), db = const_discriminant(b, z);
      auto near_shell = [&](Complex d) {
        return std::abs(d.imag()) < 10 * tol || std::abs(std::abs(d.real()) - 1) < 10 * tol;
      };
      if (near_shell(da) || near_shell(db)) continue;
      CHECK(const_spectrum_membership(a, z, tol) == const_spectrum_membership(b, z, tol));
      ++compared;
    }
  CHECK(compared > 3000);
}

TEST_CASE("members of real-pq constant spectra lie on the cross") {
  const ConstantModel focus(Complex(-1, -1), Complex(1, -1), 1.0);
  const double B1 = std::sqrt(2.0);
  for (int i = 0; i < 41; ++i)
    for (int j = 0; j < 41; ++j) {
      const Complex z(-2 + 0.1 * i, -2 + 0.1 * j);
      if (!const_spectrum_membership(focus, z, 1e-9)) continue;
      const bool on_cross = std::abs(z.imag()) < 1e-12 || (std::abs(z.real()) < 1e-12 && std::abs(z.imag()) <= B1);
      CHECK(on_cross);
    }
}
