#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "renewal_ldp/free_energy.hpp"

using namespace renewal_ldp;

TEST_CASE("free energy of deterministic renewals is linear") {
  const Model m = make_dirac(1, 1.0);
  for (double k : {-2.0, 0.0, 0.7, 3.0}) {
    const FreeEnergyPoint fe = free_energy(m, std::vector<double>{k});
    CHECK(fe.z == Catch::Approx(k).margin(1e-12));
    CHECK(!fe.on_theta);
    CHECK((*fe.nu)[0] == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("free energy of the geometric model matches the closed form") {
  const Model m = oracles::geometric_model();
  for (double k : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.5}) {
    const FreeEnergyPoint fe = free_energy(m, std::vector<double>{k});
    CHECK(fe.z == Catch::Approx(oracles::geometric_z(k)).margin(1e-10));
  }
  CHECK(free_energy(m, std::vector<double>{1.0}).z ==
        Catch::Approx(0.6201145).margin(1e-7));
  CHECK(free_energy(m, std::vector<double>{0.0}).z ==
        Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("on Theta the free energy sticks to the boundary value") {
  // zeta model, beta < beta_c = 0: z(k) = ell = 0 for k <= -beta
  const double beta = -0.4;
  const Model m = make_zeta_model(2.5, beta).count_model();
  for (double k : {-1.0, 0.0, 0.4 - 1e-6}) {
    const FreeEnergyPoint fe = free_energy(m, std::vector<double>{k});
    CHECK(fe.on_theta);
    CHECK(fe.z == Catch::Approx(0.0).margin(1e-14));
  }
  const FreeEnergyPoint off = free_energy(m, std::vector<double>{0.5});
  CHECK(!off.on_theta);
  CHECK(off.z > 0.0);
}

TEST_CASE("nu and hessian of the geometric model at k = 0") {
  const Model m = oracles::geometric_model();
  const FreeEnergyPoint fe = free_energy(m, std::vector<double>{0.0});
  REQUIRE(fe.nu);
  CHECK((*fe.nu)[0] == Catch::Approx(0.5).margin(1e-11));
  REQUIRE(fe.hessian);
  CHECK((*fe.hessian)[0][0] == Catch::Approx(0.25).margin(1e-10));
}

TEST_CASE("nu equals the finite-difference gradient of z") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int done = 0;
  while (done < 40) {
    const int dim = done % 2 == 0 ? 1 : 2;
    const Model m = oracles::random_model(rng, dim);
    std::vector<double> k(dim);
    for (double& x : k) x = 2.0 * unif(rng) - 1.0;
    const FreeEnergyPoint fe = free_energy(m, k);
    if (fe.on_theta) continue;  // gradient test is for the analytic region
    ++done;
    for (int i = 0; i < dim; ++i) {
      const double fd = oracles::central_diff(
          [&](double x) {
            std::vector<double> kk = k;
            kk[i] = x;
            return free_energy(m, kk).z;
          },
          k[i], 1e-5);
      CHECK((*fe.nu)[i] ==
            Catch::Approx(fd).margin(1e-6 * (1.0 + std::abs((*fe.nu)[i]))));
    }
  }
}

TEST_CASE("hessian is symmetric PSD and differentiates nu") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int done = 0;
  while (done < 10) {
    const Model m = oracles::random_model(rng, 2);
    std::vector<double> k{unif(rng) - 0.5, unif(rng) - 0.5};
    const FreeEnergyPoint fe = free_energy(m, k);
    if (fe.on_theta) continue;
    ++done;
    const Matrix& J = *fe.hessian;
    CHECK(J[0][1] == Catch::Approx(J[1][0]).margin(1e-12));
    CHECK(J[0][0] >= -1e-12);
    CHECK(J[0][0] * J[1][1] - J[0][1] * J[1][0] >= -1e-10);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double fd = oracles::central_diff(
            [&](double x) {
              std::vector<double> kk = k;
              kk[j] = x;
              const FreeEnergyPoint p = free_energy(m, kk);
              return (*p.nu)[i];
            },
            k[j], 1e-4);
        CHECK(J[i][j] == Catch::Approx(fd).margin(
                             1e-5 * (1.0 + std::abs(J[i][j]))));
      }
    }
  }
}

TEST_CASE("z is convex and dominated from below by the boundary affine map") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int it = 0; it < 30; ++it) {
    const Model m = oracles::random_model(rng);
    const double k1 = 3.0 * unif(rng) - 1.5;
    const double k2 = 3.0 * unif(rng) - 1.5;
    const double z1 = free_energy(m, std::vector<double>{k1}).z;
    const double z2 = free_energy(m, std::vector<double>{k2}).z;
    const double zm =
        free_energy(m, std::vector<double>{0.5 * (k1 + k2)}).z;
    CHECK(zm <= 0.5 * (z1 + z2) + 1e-12);
    if (m.ell() != kNegInf) {
      CHECK(z1 >= k1 * m.r()[0] + m.ell() - 1e-12);
    }
  }
}

TEST_CASE("subdifferential classification across the zeta family") {
  const double wc = oracles::kZeta52 / oracles::kZeta32;

  // geometric: Theta empty, always a gradient point
  {
    const FreeEnergyPoint fe =
        free_energy(oracles::geometric_model(), std::vector<double>{0.3});
    CHECK(fe.subdiff == SubdiffKind::point_nu);
  }
  // critical zeta model: segment [0, w_c] at k = 0
  {
    const Model m = make_zeta_model(2.5, 0.0).count_model();
    const FreeEnergyPoint fe = free_energy(m, std::vector<double>{0.0});
    CHECK(fe.on_theta);
    REQUIRE(fe.subdiff == SubdiffKind::segment);
    CHECK(fe.segment_a[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(fe.segment_b[0] == Catch::Approx(wc).margin(1e-9));
  }
  // subcritical: theta(0) < 1 pins the gradient at r
  {
    const Model m = make_zeta_model(2.5, -0.3).count_model();
    const FreeEnergyPoint fe = free_energy(m, std::vector<double>{0.0});
    CHECK(fe.on_theta);
    CHECK(fe.subdiff == SubdiffKind::point_r);
    CHECK((*fe.nu)[0] == 0.0);
  }
  // heavy tail without first moment: point at r even where theta = 1
  {
    const Model m = make_zeta_model(1.5, 0.0).count_model();
    const FreeEnergyPoint fe = free_energy(m, std::vector<double>{0.0});
    CHECK(fe.on_theta);
    CHECK(fe.subdiff == SubdiffKind::point_r);
  }
}

TEST_CASE("criticality classification") {
  const double wc = oracles::kZeta52 / oracles::kZeta32;
  {
    const CriticalityReport rep =
        criticality(make_zeta_model(2.5, 0.0).count_model());
    CHECK(rep.is_critical);
    REQUIRE(rep.segment);
    CHECK(rep.segment->first[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK(rep.segment->second[0] == Catch::Approx(wc).margin(1e-9));
    CHECK(rep.rho[0] == Catch::Approx(wc).margin(1e-9));
  }
  {
    const CriticalityReport rep =
        criticality(make_zeta_model(1.5, 0.0).count_model());
    CHECK(!rep.is_critical);
    CHECK(rep.rho[0] == 0.0);
  }
  {
    const CriticalityReport rep = criticality(oracles::geometric_model());
    CHECK(!rep.is_critical);
    CHECK(rep.rho[0] == Catch::Approx(0.5).margin(1e-10));
  }
}

TEST_CASE("root residual satisfies the contract") {
  std::mt19937_64 rng(43);
  for (int it = 0; it < 25; ++it) {
    const Model m = oracles::random_model(rng);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const std::vector<double> k{unif(rng)};
    const FreeEnergyPoint fe = free_energy(m, k);
    if (!fe.on_theta) {
      CHECK(std::abs(grand_sum(m, k, fe.z).value - 1.0) <= 1e-10);
    }
  }
}
