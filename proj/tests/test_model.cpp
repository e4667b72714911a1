#include <catch_amalgamated.hpp>

#include <cmath>

#include "thermoent/model.hpp"

using namespace thermoent;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("energy ladders from gaps") {
  const auto a = EnergyLadder::from_gaps({1.0, 2.0, 0.5});
  CHECK(a.energies() == std::vector<double>{0.0, 1.0, 3.0, 3.5});
  const auto b = EnergyLadder::from_reversed_gaps({1.0, 2.0, 0.5});
  CHECK(b.energies() == std::vector<double>{0.0, 0.5, 2.5, 3.5});
  CHECK(a.gap(1, 3) == 2.5);
}

TEST_CASE("energy ladder invariants") {
  CHECK_THROWS_AS(EnergyLadder({0.0}), ModelError);
  CHECK_THROWS_AS(EnergyLadder({0.1, 1.0}), ModelError);
  CHECK_THROWS_AS(EnergyLadder({0.0, 1.0, 1.0}), ModelError);
}

TEST_CASE("machine spec invariants") {
  CHECK_NOTHROW(MachineSpec::qutrit(3.0, 1e-3, 1e-3, 1e-3));
  CHECK_THROWS_AS(MachineSpec::qutrit(-1.0, 0, 0, 0), ModelError);
  CHECK_THROWS_AS(MachineSpec::qudit({2.0, 1.0, 1.0}, {0, 0, 0}), ModelError);
  CHECK_THROWS_AS(MachineSpec::qudit({1.0, 1.0, 1.0}, {0, 0}), ModelError);
  CHECK_THROWS_AS(MachineSpec::qudit({1.0}, {0}), ModelError);
  CHECK_THROWS_AS(MachineSpec::qutrit(1.0, NAN, 0, 0), ModelError);
  const auto q = MachineSpec::uniform_qudit(4, 1e-3);
  CHECK(q.levels() == 5);
  CHECK(q.couplings.size() == 4);
}

TEST_CASE("qutrit free Hamiltonians") {
  const auto h = qutrit_hamiltonians(MachineSpec::qutrit(3.0, 0, 0, 0));
  // A: 0, 1, 1 + eps on the slow index; B: 0, eps, 1 + eps on the fast index.
  const double ea[3] = {0.0, 1.0, 4.0}, eb[3] = {0.0, 3.0, 4.0};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(h.h_a(3 * a + b, 3 * a + b).real() == ea[a]);
      CHECK(h.h_b(3 * a + b, 3 * a + b).real() == eb[b]);
    }
  }
}

TEST_CASE("qutrit interaction is resonant") {
  const MachineSpec spec = MachineSpec::qutrit(2.5, 0.1, 0.2, 0.3);
  const ComplexMatrix h0 = free_hamiltonian(spec);
  const ComplexMatrix v = interaction_hamiltonian(spec);
  CHECK(v.isApprox(v.adjoint()));
  CHECK(std::abs(v(0 * 3 + 2, 2 * 3 + 0) - 0.1) < 1e-15);
  CHECK(std::abs(v(1 * 3 + 1, 2 * 3 + 0) - 0.2) < 1e-15);
  CHECK(std::abs(v(1 * 3 + 1, 0 * 3 + 2) - 0.3) < 1e-15);
  // Energy conserving: [H_A + H_B, H_int] = 0.
  CHECK((h0 * v - v * h0).norm() < 1e-14);
}

TEST_CASE("qudit interaction couples |d,0> to |k,d-k>") {
  const std::size_t d = 4;
  const MachineSpec spec = MachineSpec::qudit({1.0, 0.7, 1.3, 2.0}, {0.1, 0.2, 0.3, 0.4});
  const ComplexMatrix v = interaction_hamiltonian(spec);
  const ComplexMatrix h0 = free_hamiltonian(spec);
  const std::size_t n = d + 1;
  for (std::size_t k = 0; k < d; ++k) {
    CHECK(std::abs(v(static_cast<Eigen::Index>(d * n), static_cast<Eigen::Index>(k * n + d - k)) -
                   spec.couplings[k]) < 1e-15);
  }
  CHECK((h0 * v - v * h0).norm() < 1e-14);
  CHECK(std::abs(v.sum()) > 0.0);
  CHECK((v.cwiseAbs().array() > 0.0).count() == static_cast<Eigen::Index>(2 * d));
}

TEST_CASE("thermal populations") {
  const EnergyLadder l({0.0, 1.0, 3.0});
  const auto inf = thermal_populations(l, Temperature::infinite());
  for (double p : inf) CHECK_THAT(p, WithinAbs(1.0 / 3.0, 1e-15));
  const auto zero = thermal_populations(l, Temperature::zero());
  CHECK(zero == std::vector<double>{1.0, 0.0, 0.0});
  const auto t = thermal_populations(l, Temperature::finite(0.7));
  CHECK_THAT(t[0] + t[1] + t[2], WithinAbs(1.0, 1e-15));
  CHECK_THAT(t[1] / t[0], WithinRel(std::exp(-1.0 / 0.7), 1e-13));
  CHECK_THAT(t[2] / t[1], WithinRel(std::exp(-2.0 / 0.7), 1e-13));
  const auto cold = thermal_populations(l, Temperature::finite(1e-3));
  CHECK(cold[0] == 1.0);
  CHECK(cold[2] == 0.0);
}

TEST_CASE("temperatures") {
  CHECK(Temperature::infinite().is_infinite());
  CHECK(std::isinf(Temperature::infinite().value()));
  CHECK(Temperature::zero().is_zero());
  CHECK_THROWS_AS(Temperature::finite(-1.0), ModelError);
  CHECK_THROWS_AS(Temperature::finite(INFINITY), ModelError);
  CHECK_THROWS_AS((BathSpec{Temperature::zero(), -1.0}.validate()), ModelError);
}
