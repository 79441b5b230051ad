#pragma once

#include <random>

#include "hullkit/cross_section.hpp"

namespace hullkit::testutil {

// Brute-force ABD oracle: composite trapezoidal quadrature over each
// rectangle of the cross-section about the plate mid-plane. Independent of
// the closed forms in abd_from_section.
inline AbdStiffness abd_quadrature_oracle(const PanelSection& s, int n = 20001) {
  AbdStiffness k;
  const Eigen::Matrix3d q = s.material.plane_stress_q();

  auto trapz = [&](double z0, double z1, auto f) {
    double h = (z1 - z0) / (n - 1);
    for (int i = 0; i < n; ++i) {
      double z = z0 + h * i;
      double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
      f(z, w);
    }
  };

  trapz(-s.plate_thickness / 2, s.plate_thickness / 2, [&](double z, double w) {
    k.A += w * q;
    k.Bc += w * z * q;
    k.C += w * z * q;
    k.D += w * z * z * q;
  });

  if (!s.is_bare_plate()) {
    const double e = s.material.youngs_modulus;
    auto stiff_rect = [&](double width, double z0, double z1) {
      trapz(z0, z1, [&](double z, double w) {
        double c = e * width * w / s.stiffener_spacing;
        k.A(0, 0) += c;
        k.Bc(0, 0) += c * z;
        k.C(0, 0) += c * z;
        k.D(0, 0) += c * z * z;
      });
    };
    double zt = -s.plate_thickness / 2;
    double zb = zt - s.web_height;
    stiff_rect(s.web_thickness, zb, zt);
    if (s.has_flange()) stiff_rect(s.flange_width, zb - s.flange_thickness, zb);
  }

  auto [dqx, dqy] = shear_stiffness(s);
  k.d_qx = s.is_bare_plate() ? dqy : dqx;
  k.d_qy = dqy;
  return k;
}

// Random stiffened section within the Table-1 case 1/2 ranges.
inline PanelSection random_section(std::mt19937_64& rng) {
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  PanelSection s;
  s.plate_thickness = uni(0.010, 0.020);
  s.web_thickness = uni(0.005, 0.020);
  s.web_height = uni(0.100, 0.200);
  s.flange_thickness = uni(0.005, 0.020);
  s.flange_width = uni(0.050, 0.100);
  s.stiffener_count = std::uniform_int_distribution<int>(2, 7)(rng);
  s.stiffener_spacing = uni(0.4, 0.9);
  s.width = s.stiffener_spacing * (s.stiffener_count + 1);
  s.span = uni(3.0, 5.0);
  s.material = Material::steel();
  return s;
}

}  // namespace hullkit::testutil
