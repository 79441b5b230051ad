#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>

#include "hullkit/cross_section.hpp"

namespace hullkit {

// Resultant-level stiffness of a shell wall: membrane/coupling/bending blocks
// plus transverse shear. Homogenized panels come from AbdStiffness, bulkheads
// and fine-model strips from the isotropic closed form.
struct ShellStiffness {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  double dqx = 0.0, dqy = 0.0;
  double thickness = 0.0;      // of the underlying wall, used for mass/body loads
  double mass_per_area = 0.0;  // kg/m^2 (smeared for stiffened panels)

  static ShellStiffness isotropic(double e, double nu, double t, double density,
                                  double k = 5.0 / 6.0);
  static ShellStiffness from_abd(const AbdStiffness& abd, const PanelSection& section);
};

// 4-node bilinear FSDT shell, flat, formulated in the element plane.
// Node DOF order: (u, v, w, tx, ty, tz); normal rotations follow
// phi_x = ty, phi_y = -tx. Transverse shear uses the MITC4 assumed natural
// strain field (edge-midpoint tying) to avoid locking; a small artificial
// drilling stiffness (alpha * max diagonal) regularizes tz.
namespace shell {

constexpr int kDofPerNode = 6;
constexpr int kElemDofs = 24;

struct StrainOps {
  Eigen::Matrix<double, 3, 24> bm;  // membrane
  Eigen::Matrix<double, 3, 24> bb;  // bending (curvature)
  Eigen::Matrix<double, 2, 24> bs;  // transverse shear (gxz, gyz)
  double det_j = 0.0;
};

Eigen::Vector4d shape(double xi, double eta);

// B-operators at a natural-coordinate point of the element with the given
// local in-plane node coordinates.
StrainOps strain_ops(const std::array<Eigen::Vector2d, 4>& xy, double xi, double eta);

Eigen::Matrix<double, 24, 24> local_stiffness(const std::array<Eigen::Vector2d, 4>& xy,
                                              const ShellStiffness& s,
                                              double drill_alpha = 1e-6);

// Consistent nodal load (local w DOFs) for transverse pressure p(x, y),
// positive toward local +z. 3x3 quadrature.
Eigen::Matrix<double, 24, 1> pressure_load(const std::array<Eigen::Vector2d, 4>& xy,
                                           const std::function<double(double, double)>& p);

// Consistent nodal load for a constant body force per unit area, given in
// local components.
Eigen::Matrix<double, 24, 1> body_load(const std::array<Eigen::Vector2d, 4>& xy,
                                       const Eigen::Vector3d& force_per_area);

}  // namespace shell
}  // namespace hullkit
