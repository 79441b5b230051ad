#include <random>

#include "doctest.h"
#include "hullkit/cross_section.hpp"
#include "hullkit/errors.hpp"
#include "test_util.hpp"

using namespace hullkit;

namespace {

PanelSection bare_plate(double tp = 0.010) {
  PanelSection s;
  s.plate_thickness = tp;
  s.web_thickness = 0;
  s.web_height = 0;
  s.flange_thickness = 0;
  s.flange_width = 0;
  s.stiffener_count = 0;
  s.stiffener_spacing = 0.5;
  s.span = 1.0;
  s.width = 1.0;
  s.material = Material::steel();
  return s;
}

PanelSection t_section_example() {
  // t_p=10, t_w=5, h_w=100, t_f=5, b_f=50 mm, s=0.5 m
  PanelSection s;
  s.plate_thickness = 0.010;
  s.web_thickness = 0.005;
  s.web_height = 0.100;
  s.flange_thickness = 0.005;
  s.flange_width = 0.050;
  s.stiffener_spacing = 0.5;
  s.stiffener_count = 5;
  s.width = 3.0;
  s.span = 4.0;
  s.material = Material::steel();
  return s;
}

double rel_diff(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b, double scale) {
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

TEST_SUITE("cross_section") {

TEST_CASE("bare plate has no membrane-bending coupling") {
  AbdStiffness k = abd_from_section(bare_plate());
  CHECK(k.Bc.cwiseAbs().maxCoeff() == 0.0);
  CHECK(k.C.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bare plate A11 matches classical plane stress") {
  AbdStiffness k = abd_from_section(bare_plate(0.010));
  double expect = 200e9 * 0.010 / (1.0 - 0.09);
  CHECK(k.A(0, 0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(k.A(0, 0) == doctest::Approx(2.1978e9).epsilon(1e-4));
}

TEST_CASE("T-stiffened section matches quadrature oracle") {
  PanelSection s = t_section_example();
  AbdStiffness k = abd_from_section(s);
  AbdStiffness o = testutil::abd_quadrature_oracle(s);
  double sa = o.A.cwiseAbs().maxCoeff();
  double sd = o.D.cwiseAbs().maxCoeff();
  double sb = std::max(o.Bc.cwiseAbs().maxCoeff(), 1e-300);
  CHECK(rel_diff(k.A, o.A, sa) < 1e-8);
  CHECK(rel_diff(k.Bc, o.Bc, sb) < 1e-8);
  CHECK(rel_diff(k.C, o.C, sb) < 1e-8);
  CHECK(rel_diff(k.D, o.D, sd) < 1e-8);
}

TEST_CASE("shear stiffness closed forms") {
  PanelSection s = t_section_example();
  auto [dqx, dqy] = shear_stiffness(s, 5.0 / 6.0);
  CHECK(dqy == doctest::Approx(6.4103e8).epsilon(1e-4));
  CHECK(dqx == doctest::Approx(6.4103e7).epsilon(1e-4));
  // exact closed forms
  double g = s.material.shear_modulus;
  CHECK(dqy == doctest::Approx((5.0 / 6.0) * g * 0.010).epsilon(1e-14));
  CHECK(dqx == doctest::Approx((5.0 / 6.0) * g * (0.005 / 0.5) * 0.100).epsilon(1e-14));

  PanelSection z = t_section_example();
  z.plate_thickness = 0.0;  // limit case, bypasses validation on purpose
  auto [dqx1, dqy1] = shear_stiffness(z, 1.0);
  CHECK(dqy1 == 0.0);
  CHECK(dqx1 > 0.0);
  CHECK_THROWS_AS(shear_stiffness(z, 0.0), ConfigError);
}

TEST_CASE("invert_abd zero resultants give zero strains") {
  AbdStiffness k = abd_from_section(t_section_example());
  StrainState s = invert_abd(k, ResultantState{});
  CHECK(s.eps0.norm() == 0.0);
  CHECK(s.eps1.norm() == 0.0);
  CHECK(s.gamma_xz == 0.0);
  CHECK(s.gamma_yz == 0.0);
}

TEST_CASE("invert_abd round trip reproduces resultants") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    PanelSection sec = testutil::random_section(rng);
    AbdStiffness k = abd_from_section(sec);
    ResultantState r;
    r.nxx = 1e6 * nd(rng);
    r.nyy = 1e6 * nd(rng);
    r.nxy = 1e6 * nd(rng);
    r.mxx = 1e4 * nd(rng);
    r.myy = 1e4 * nd(rng);
    r.mxy = 1e4 * nd(rng);
    r.qx = 1e5 * nd(rng);
    r.qy = 1e5 * nd(rng);
    ResultantState rr = forward_abd(k, invert_abd(k, r));
    double scale = std::max({std::abs(r.nxx), std::abs(r.nyy), std::abs(r.nxy), 1.0});
    double mscale = std::max({std::abs(r.mxx), std::abs(r.myy), std::abs(r.mxy), 1.0});
    CHECK(std::abs(rr.nxx - r.nxx) / scale < 1e-10);
    CHECK(std::abs(rr.nyy - r.nyy) / scale < 1e-10);
    CHECK(std::abs(rr.nxy - r.nxy) / scale < 1e-10);
    CHECK(std::abs(rr.mxx - r.mxx) / mscale < 1e-10);
    CHECK(std::abs(rr.myy - r.myy) / mscale < 1e-10);
    CHECK(std::abs(rr.mxy - r.mxy) / mscale < 1e-10);
    CHECK(rr.qx == doctest::Approx(r.qx).epsilon(1e-12));
    CHECK(rr.qy == doctest::Approx(r.qy).epsilon(1e-12));
  }
}

TEST_CASE("invert_abd bare plate uniaxial membrane") {
  AbdStiffness k = abd_from_section(bare_plate());
  ResultantState r;
  r.nxx = 1e6;
  StrainState s = invert_abd(k, r);
  // 2x2 inverse of A = t*f*[[1,nu],[nu,1]], f = E/(1-nu^2):
  // eps_xx = N/(E t), eps_yy = -nu N/(E t)
  double expect = 1e6 / (200e9 * 0.010);
  CHECK(s.eps0(0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(s.eps0(1) == doctest::Approx(-0.3 * expect).epsilon(1e-12));
}

TEST_CASE("assembled stiffness is symmetric for random sections") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    AbdStiffness k = abd_from_section(testutil::random_section(rng));
    Eigen::Matrix<double, 6, 6> m = k.assembled();
    double scale = m.cwiseAbs().maxCoeff();
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  }
}

TEST_CASE("D11 never decreases when a dimension grows") {
  std::mt19937_64 rng(13);
  const double bump = 1.10;
  for (int t = 0; t < 30; ++t) {
    PanelSection base = testutil::random_section(rng);
    double d0 = abd_from_section(base).D(0, 0);
    for (int which = 0; which < 5; ++which) {
      PanelSection s = base;
      switch (which) {
        case 0: s.plate_thickness *= bump; break;
        case 1: s.web_thickness *= bump; break;
        case 2: s.web_height *= bump; break;
        case 3: s.flange_thickness *= bump; break;
        case 4: s.flange_width *= bump; break;
      }
      CHECK(abd_from_section(s).D(0, 0) >= d0);
    }
  }
}

TEST_CASE("closed form matches oracle on random sections") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 25; ++t) {
    PanelSection sec = testutil::random_section(rng);
    AbdStiffness k = abd_from_section(sec);
    AbdStiffness o = testutil::abd_quadrature_oracle(sec);
    double sa = o.A.cwiseAbs().maxCoeff();
    double sd = o.D.cwiseAbs().maxCoeff();
    double sb = o.Bc.cwiseAbs().maxCoeff();
    CHECK(rel_diff(k.A, o.A, sa) < 1e-8);
    CHECK(rel_diff(k.Bc, o.Bc, sb) < 1e-8);
    CHECK(rel_diff(k.D, o.D, sd) < 1e-8);
  }
}

TEST_CASE("degenerate stiffness is rejected") {
  AbdStiffness k = abd_from_section(t_section_example());
  k.Bc(0, 0) = 1e15;  // breaks symmetry and definiteness
  CHECK_THROWS_AS(k.validate(), ConfigError);
  PanelSection s = t_section_example();
  s.plate_thickness = -1.0;
  CHECK_THROWS_AS(abd_from_section(s), ConfigError);
  s = t_section_example();
  s.stiffener_spacing = 0.4;  // violates s*(n+1) = width
  CHECK_THROWS_AS(abd_from_section(s), ConfigError);
}

TEST_CASE("section JSON round trip and schema guard") {
  PanelSection s = t_section_example();
  nlohmann::json j = section_to_json(s);
  CHECK(j.at("schema_version").get<int>() == kSectionSchemaVersion);
  PanelSection r = section_from_json(j);
  CHECK(r.plate_thickness == s.plate_thickness);
  CHECK(r.stiffener_count == s.stiffener_count);
  CHECK(r.material.youngs_modulus == s.material.youngs_modulus);
  j["schema_version"] = 999;
  CHECK_THROWS_AS(section_from_json(j), SchemaError);
}

}  // TEST_SUITE
