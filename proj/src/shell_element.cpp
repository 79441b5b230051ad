#include "hullkit/shell_element.hpp"

#include <cmath>

#include "hullkit/errors.hpp"

namespace hullkit {

ShellStiffness ShellStiffness::isotropic(double e, double nu, double t, double density,
                                         double k) {
  Material m;
  m.youngs_modulus = e;
  m.poisson_ratio = nu;
  m.shear_modulus = e / (2.0 * (1.0 + nu));
  m.density = density;
  ShellStiffness s;
  Eigen::Matrix3d q = m.plane_stress_q();
  s.A = q * t;
  s.D = q * (t * t * t / 12.0);
  s.dqx = s.dqy = k * m.shear_modulus * t;
  s.thickness = t;
  s.mass_per_area = density * t;
  return s;
}

ShellStiffness ShellStiffness::from_abd(const AbdStiffness& abd, const PanelSection& sec) {
  ShellStiffness s;
  s.A = abd.A;
  s.B = abd.Bc;
  s.C = abd.C;
  s.D = abd.D;
  s.dqx = abd.d_qx;
  s.dqy = abd.d_qy;
  s.thickness = sec.plate_thickness;
  double smeared = sec.plate_thickness;
  if (!sec.is_bare_plate()) {
    double a_stiff = sec.web_thickness * sec.web_height;
    if (sec.has_flange()) a_stiff += sec.flange_thickness * sec.flange_width;
    smeared += a_stiff / sec.stiffener_spacing;
  }
  s.mass_per_area = sec.material.density * smeared;
  return s;
}

namespace shell {

Eigen::Vector4d shape(double xi, double eta) {
  Eigen::Vector4d n;
  n << 0.25 * (1 - xi) * (1 - eta), 0.25 * (1 + xi) * (1 - eta),
      0.25 * (1 + xi) * (1 + eta), 0.25 * (1 - xi) * (1 + eta);
  return n;
}

static void shape_derivs(double xi, double eta, Eigen::Vector4d& dxi, Eigen::Vector4d& deta) {
  dxi << -0.25 * (1 - eta), 0.25 * (1 - eta), 0.25 * (1 + eta), -0.25 * (1 + eta);
  deta << -0.25 * (1 - xi), -0.25 * (1 + xi), 0.25 * (1 + xi), 0.25 * (1 - xi);
}

static Eigen::Matrix2d jacobian(const std::array<Eigen::Vector2d, 4>& xy, double xi,
                                double eta) {
  Eigen::Vector4d dxi, deta;
  shape_derivs(xi, eta, dxi, deta);
  Eigen::Matrix2d j = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 4; ++i) {
    j(0, 0) += dxi(i) * xy[i](0);
    j(0, 1) += dxi(i) * xy[i](1);
    j(1, 0) += deta(i) * xy[i](0);
    j(1, 1) += deta(i) * xy[i](1);
  }
  return j;
}

// Covariant transverse shear row (gamma_dir-z) at a tying point:
// gamma_xi = w,xi + x,xi*ty - y,xi*tx  (and analogously for eta).
static Eigen::Matrix<double, 1, 24> covariant_shear_row(
    const std::array<Eigen::Vector2d, 4>& xy, double xi, double eta, bool eta_dir) {
  Eigen::Vector4d n = shape(xi, eta);
  Eigen::Vector4d dxi, deta;
  shape_derivs(xi, eta, dxi, deta);
  const Eigen::Vector4d& dn = eta_dir ? deta : dxi;
  double x_d = 0, y_d = 0;
  for (int i = 0; i < 4; ++i) {
    x_d += dn(i) * xy[i](0);
    y_d += dn(i) * xy[i](1);
  }
  Eigen::Matrix<double, 1, 24> row = Eigen::Matrix<double, 1, 24>::Zero();
  for (int i = 0; i < 4; ++i) {
    row(0, 6 * i + 2) = dn(i);          // w
    row(0, 6 * i + 3) = -y_d * n(i);    // tx
    row(0, 6 * i + 4) = x_d * n(i);     // ty
  }
  return row;
}

StrainOps strain_ops(const std::array<Eigen::Vector2d, 4>& xy, double xi, double eta) {
  StrainOps ops;
  ops.bm.setZero();
  ops.bb.setZero();
  ops.bs.setZero();

  Eigen::Vector4d dxi, deta;
  shape_derivs(xi, eta, dxi, deta);
  Eigen::Matrix2d j = jacobian(xy, xi, eta);
  double det = j.determinant();
  if (!(det > 0.0)) throw SolverError("shell element: non-positive Jacobian");
  Eigen::Matrix2d inv = j.inverse();
  ops.det_j = det;

  for (int i = 0; i < 4; ++i) {
    double dndx = inv(0, 0) * dxi(i) + inv(0, 1) * deta(i);
    double dndy = inv(1, 0) * dxi(i) + inv(1, 1) * deta(i);
    // membrane
    ops.bm(0, 6 * i + 0) = dndx;
    ops.bm(1, 6 * i + 1) = dndy;
    ops.bm(2, 6 * i + 0) = dndy;
    ops.bm(2, 6 * i + 1) = dndx;
    // curvature: e1xx = ty,x ; e1yy = -tx,y ; g1xy = ty,y - tx,x
    ops.bb(0, 6 * i + 4) = dndx;
    ops.bb(1, 6 * i + 3) = -dndy;
    ops.bb(2, 6 * i + 4) = dndy;
    ops.bb(2, 6 * i + 3) = -dndx;
  }

  // MITC4 assumed shear: interpolate covariant strains from edge midpoints.
  Eigen::Matrix<double, 1, 24> g_xi_a = covariant_shear_row(xy, 0.0, -1.0, false);
  Eigen::Matrix<double, 1, 24> g_xi_c = covariant_shear_row(xy, 0.0, 1.0, false);
  Eigen::Matrix<double, 1, 24> g_eta_d = covariant_shear_row(xy, -1.0, 0.0, true);
  Eigen::Matrix<double, 1, 24> g_eta_b = covariant_shear_row(xy, 1.0, 0.0, true);
  Eigen::Matrix<double, 1, 24> g_xi =
      0.5 * (1.0 - eta) * g_xi_a + 0.5 * (1.0 + eta) * g_xi_c;
  Eigen::Matrix<double, 1, 24> g_eta =
      0.5 * (1.0 - xi) * g_eta_d + 0.5 * (1.0 + xi) * g_eta_b;
  // [gxz; gyz] = J^-1 [g_xi; g_eta]
  ops.bs.row(0) = inv(0, 0) * g_xi + inv(0, 1) * g_eta;
  ops.bs.row(1) = inv(1, 0) * g_xi + inv(1, 1) * g_eta;
  return ops;
}

Eigen::Matrix<double, 24, 24> local_stiffness(const std::array<Eigen::Vector2d, 4>& xy,
                                              const ShellStiffness& s, double drill_alpha) {
  static const double g = 1.0 / std::sqrt(3.0);
  static const double pts[2] = {-g, g};
  Eigen::Matrix<double, 24, 24> k = Eigen::Matrix<double, 24, 24>::Zero();
  Eigen::Matrix2d dq = Eigen::Matrix2d::Zero();
  dq(0, 0) = s.dqx;
  dq(1, 1) = s.dqy;
  for (double xi : pts) {
    for (double eta : pts) {
      StrainOps ops = strain_ops(xy, xi, eta);
      double w = ops.det_j;  // unit gauss weights
      k += w * (ops.bm.transpose() * s.A * ops.bm + ops.bm.transpose() * s.B * ops.bb +
                ops.bb.transpose() * s.C * ops.bm + ops.bb.transpose() * s.D * ops.bb +
                ops.bs.transpose() * dq * ops.bs);
    }
  }
  double kd = drill_alpha * k.diagonal().maxCoeff();
  for (int i = 0; i < 4; ++i) k(6 * i + 5, 6 * i + 5) += kd;
  return k;
}

Eigen::Matrix<double, 24, 1> pressure_load(const std::array<Eigen::Vector2d, 4>& xy,
                                           const std::function<double(double, double)>& p) {
  static const double g = std::sqrt(3.0 / 5.0);
  static const double pts[3] = {-g, 0.0, g};
  static const double wts[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  Eigen::Matrix<double, 24, 1> f = Eigen::Matrix<double, 24, 1>::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      double xi = pts[a], eta = pts[b];
      Eigen::Vector4d n = shape(xi, eta);
      Eigen::Matrix2d j = jacobian(xy, xi, eta);
      double x = 0, y = 0;
      for (int i = 0; i < 4; ++i) {
        x += n(i) * xy[i](0);
        y += n(i) * xy[i](1);
      }
      double w = wts[a] * wts[b] * j.determinant() * p(x, y);
      for (int i = 0; i < 4; ++i) f(6 * i + 2) += w * n(i);
    }
  }
  return f;
}

Eigen::Matrix<double, 24, 1> body_load(const std::array<Eigen::Vector2d, 4>& xy,
                                       const Eigen::Vector3d& force_per_area) {
  static const double g = 1.0 / std::sqrt(3.0);
  static const double pts[2] = {-g, g};
  Eigen::Matrix<double, 24, 1> f = Eigen::Matrix<double, 24, 1>::Zero();
  for (double xi : pts) {
    for (double eta : pts) {
      Eigen::Vector4d n = shape(xi, eta);
      double det = jacobian(xy, xi, eta).determinant();
      for (int i = 0; i < 4; ++i)
        f.segment<3>(6 * i) += det * n(i) * force_per_area;
    }
  }
  return f;
}

}  // namespace shell
}  // namespace hullkit
