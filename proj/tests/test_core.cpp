#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rotorsim/basis.hpp"
#include "rotorsim/cos2.hpp"
#include "rotorsim/errors.hpp"
#include "rotorsim/free_prop.hpp"
#include "rotorsim/kick.hpp"
#include "rotorsim/molecule.hpp"
#include "rotorsim/tightbinding.hpp"
#include "rotorsim/wall.hpp"

using namespace rotorsim;

TEST_CASE("builtin molecules reconstruct rotational constants from t_rev") {
  const auto db = builtin_database();
  CHECK(std::abs(lookup(db, "N2").B - 1.989527) < 5e-6);
  CHECK(std::abs(lookup(db, "H2").B - 59.353042) < 5e-6);
  CHECK(std::abs(lookup(db, "N2").t_rev_ps() - 8.383) < 1e-9);
  CHECK_THROWS_AS((void)lookup(db, "Xe2"), UnknownMoleculeError);
}

TEST_CASE("rotational energy includes the centrifugal correction") {
  const auto db = builtin_database();
  const auto n2 = lookup(db, "N2");
  CHECK(std::abs(energy_level(10, n2) - 109.964910) < 5e-6);
  MoleculeParams rigid = n2;
  rigid.D = 0.0;
  CHECK(energy_level(10, rigid) == doctest::Approx(110.0).epsilon(1e-14));
}

TEST_CASE("free propagator is the identity at exact resonance for a rigid rotor") {
  const MoleculeParams rigid{"rigid", 1.0, 0.0, 1, 1};
  const auto ph = free_propagator_phases(rigid, 1.0, 0, 200);
  for (const auto& z : ph) {
    CHECK(std::abs(z - std::complex<double>(1.0, 0.0)) == 0.0);
  }
}

TEST_CASE("half revival carries the (-1)^(J(J+1)/2) sign pattern") {
  const MoleculeParams rigid{"rigid", 1.0, 0.0, 1, 1};
  const auto ph = free_propagator_phases(rigid, 0.5, 0, 6);
  const double want[7] = {1, -1, -1, 1, 1, -1, -1};
  for (int J = 0; J <= 6; ++J)
    CHECK(std::abs(ph[J] - std::complex<double>(want[J], 0.0)) < 1e-13);
  for (const auto& z : ph) CHECK(std::abs(std::abs(z) - 1.0) < 1e-14);
}

TEST_CASE("phase reduction keeps precision for huge J") {
  const MoleculeParams soft{"soft", 1.0, 2.90e-6, 1, 1};
  const auto ph = free_propagator_phases(soft, 1.0, 0, 3000);
  for (const auto& z : ph) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
}

TEST_CASE("kick at P=0 is the identity") {
  const KickOperator k(0.0, 0, 40);
  CHECK((k.matrix() - Eigen::MatrixXcd::Identity(41, 41)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("kick is unitary") {
  for (int j_max : {30, 120, 200}) {
    const KickOperator k(3.0, 0, j_max);
    CHECK(k.max_unitarity_defect() < 1e-12);
  }
  const KickOperator km(5.0, 7, 90);
  CHECK(km.max_unitarity_defect() < 1e-12);
}

TEST_CASE("kicks compose as a semigroup in P") {
  const int j_max = 60;
  const KickOperator k1(1.3, 0, j_max);
  const KickOperator k2(2.6, 0, j_max);
  const Eigen::MatrixXcd prod = k1.matrix() * k1.matrix();
  CHECK((prod - k2.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("kick preserves parity blocks") {
  const KickOperator k(3.0, 1, 41);
  const BlockBasis b(1, 41);
  for (int i = 0; i < b.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      if ((i + j) % 2 == 1) CHECK(std::abs(k.matrix()(i, j)) < 1e-15);
    }
  }
}

TEST_CASE("kick from the ground state populates even J and raises alignment") {
  const BlockBasis b(0, 80);
  auto st = RotorBlockState::pure(b, 0);
  const KickOperator k(3.0, 0, 80);
  st.c = k.apply(st.c);
  double norm = 0.0;
  for (const auto& z : st.c) norm += std::norm(z);
  CHECK(std::abs(norm - 1.0) < 1e-12);
  CHECK(std::norm(st.c[b.index_of(2)]) > std::norm(st.c[b.index_of(4)]));
  CHECK(std::norm(st.c[b.index_of(4)]) > std::norm(st.c[b.index_of(6)]));
  const auto c2 = cos2_matrix(0, 80);
  CHECK(alignment_expectation(c2, st.c) > 1.0 / 3.0);
}

TEST_CASE("alignment of any single |J M> state uses the diagonal element") {
  const BlockBasis b(2, 30);
  auto st = RotorBlockState::pure(b, 7);
  const auto c2 = cos2_matrix(2, 30);
  CHECK(alignment_expectation(c2, st.c) == doctest::Approx(cos2_diag_element(7, 2)).epsilon(1e-14));
  CHECK(std::abs(cos2_diag_element(0, 0) - 1.0 / 3.0) < 1e-15);
}

TEST_CASE("cos^2 matrix is M-sign symmetric") {
  const auto a = cos2_matrix(3, 40);
  const auto bm = cos2_matrix(-3, 40);
  for (size_t i = 0; i < a.diag.size(); ++i) CHECK(a.diag[i] == bm.diag[i]);
  for (size_t i = 0; i < a.off2.size(); ++i) CHECK(a.off2[i] == bm.off2[i]);
}

TEST_CASE("auto basis size obeys the sizing rule") {
  CHECK(auto_j_max(35.06, 0, 32, 3.0) >= 80);
  CHECK(auto_j_max(35.06, 0, 32, 3.0) >= 2 * 35);
  CHECK(auto_j_max(0.0, 40, 40, 3.0) >= 40 + static_cast<int>(4 * 40 * std::sqrt(3.0)));
}

TEST_CASE("Anderson wall positions for the builtin table") {
  const auto db = builtin_database();
  const struct {
    const char* name;
    double j_a;
  } rows[] = {{"H2", 5.3996},  {"N2", 35.0621},  {"Cl2", 54.6701}, {"ICl", 70.6809},
              {"CO2", 71.4286}, {"Br2", 78.8479}, {"OCS", 83.5921}, {"I2", 105.3195}};
  for (const auto& r : rows) {
    const auto w = anderson_wall(lookup(db, r.name));
    CHECK(std::abs(w.j_anderson - r.j_a) < 5e-4);
  }
  CHECK(anderson_wall(lookup(db, "N2")).j_anderson_rounded == 35);
  CHECK(anderson_wall(lookup(db, "H2")).j_anderson_rounded == 5);
}

TEST_CASE("rigid rotor has no wall") {
  MoleculeParams m{"rigid", 2.0, 0.0, 1, 1};
  CHECK_THROWS_AS((void)anderson_wall(m), NoWallError);
}

TEST_CASE("site energies: rigid rotor on resonance sits at the band center") {
  MoleculeParams m{"rigid", 1.0, 0.0, 1, 1};
  for (int J : {0, 2, 5, 31}) {
    const auto s = tightbinding_site_energy(m, 0.0, J, 1.0);
    CHECK(!s.pole);
    CHECK(std::abs(s.value) < 1e-12);
  }
}

TEST_CASE("site energy poles are flagged") {
  MoleculeParams m{"rigid", 1.0, 0.0, 1, 1};
  const auto s = tightbinding_site_energy(m, 1.0, 0, 1.0);  // tan(pi/2)
  CHECK(s.pole);
  CHECK(std::isinf(s.value));
}

TEST_CASE("resonant site phases obey the closed-form increment") {
  const MoleculeParams soft{"soft", 1.0, 2.90e-6, 1, 1};
  for (int J = 0; J <= 150; J += 7) {
    const double dphi = site_phase_increment(soft, J);
    const double x = static_cast<double>(J);
    const double closed =
        0.5 * std::numbers::pi * soft.dob() * (8 * x * x * x + 36 * x * x + 60 * x + 36);
    CHECK(std::abs(dphi - closed) < 1e-12);
  }
}

TEST_CASE("phase increment approaches the cubic law only deep in the ladder") {
  const MoleculeParams soft{"soft", 1.0, 2.90e-6, 1, 1};
  auto ratio = [&](int J) {
    const double x = static_cast<double>(J);
    return site_phase_increment(soft, J) / (4.0 * std::numbers::pi * soft.dob() * x * x * x);
  };
  CHECK(std::abs(ratio(91) - 1.0) > 0.05);
  CHECK(std::abs(ratio(92) - 1.0) <= 0.05);
  CHECK(std::abs(ratio(500) - 1.0) < 0.01);
}

TEST_CASE("phase increment reaches pi/2 at the wall") {
  const auto db = builtin_database();
  for (const auto& [name, mol] : db) {
    const auto w = anderson_wall(mol);
    // the cubic law at the exact wall position is pi/2 identically
    const double cubic = 4.0 * std::numbers::pi * mol.dob() * std::pow(w.j_anderson, 3);
    CHECK(std::abs(cubic - std::numbers::pi / 2) < 1e-12);
  }
  // the exact increment at the nearest integer site carries subleading terms
  const auto n2 = lookup(db, "N2");
  const int j_a = static_cast<int>(std::lround(anderson_wall(n2).j_anderson));
  const double dphi = site_phase_increment(n2, j_a);
  CHECK(std::abs(dphi - std::numbers::pi / 2) < 0.15 * std::numbers::pi / 2);
}

TEST_CASE("parameter validation rejects nonsense") {
  MoleculeParams bad{"x", -1.0, 0.0, 1, 1};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  MoleculeParams heavy{"x", 1.0, 0.5, 1, 1};
  CHECK_THROWS_AS(heavy.validate(), ConfigError);
  PulseTrainSpec t{3.0, -1, 0.0};
  CHECK_THROWS_AS(t.validate(), ConfigError);
  PulseTrainSpec det{3.0, 8, 0.7};
  CHECK_THROWS_AS(det.validate(), ConfigError);
  CHECK_THROWS_AS(BlockBasis(5, 6), InvalidBasisError);
}

TEST_CASE("spin weights alternate by parity") {
  const auto db = builtin_database();
  const auto n2 = lookup(db, "N2");
  CHECK(n2.spin_weight(0) == 2.0);
  CHECK(n2.spin_weight(1) == 1.0);
  const auto co2 = lookup(db, "CO2");
  CHECK(co2.spin_weight(1) == 0.0);
}
