#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "json.hpp"

namespace hullkit {

// Isotropic material. Shear modulus is stored explicitly but must stay
// consistent with E/(2(1+nu)) within 1e-12 relative.
struct Material {
  double youngs_modulus = 200e9;  // Pa
  double poisson_ratio = 0.3;
  double shear_modulus = 200e9 / 2.6;  // Pa
  double density = 7850.0;             // kg/m^3

  static Material steel();
  void validate() const;

  // Plane-stress reduced stiffness [Q] (3x3, Pa).
  Eigen::Matrix3d plane_stress_q() const;
};

// Stiffened-panel cross section: plate of thickness t_p with equally spaced
// T-profile stiffeners (web t_w x h_w, flange t_f x b_f) along the local
// x direction. Geometry convention: plate mid-plane at z = 0, stiffeners on
// the negative-z side, web over z in [-t_p/2 - h_w, -t_p/2], flange below it.
struct PanelSection {
  double plate_thickness = 0.010;   // t_p, m
  double web_thickness = 0.005;     // t_w, m
  double web_height = 0.100;        // h_w, m
  double flange_thickness = 0.005;  // t_f, m
  double flange_width = 0.050;      // b_f, m
  double stiffener_spacing = 0.5;   // s, m
  int stiffener_count = 5;
  double span = 4.0;   // L, stiffener direction, m
  double width = 3.0;  // B, transverse, m
  Material material;

  bool is_bare_plate() const { return web_height <= 0.0 && flange_thickness <= 0.0; }
  bool has_flange() const { return flange_thickness > 0.0 && flange_width > 0.0; }

  // Structural invariants (positive dimensions, equal spacing s*(n+1) = B).
  // Table-1 range enforcement is a separate, pipeline-level check.
  void validate() const;

  // z of the flange plane measured from the plate mid-plane (negative).
  double flange_plane_z() const { return -(plate_thickness / 2.0 + web_height); }
  // y position of stiffener i (0-based), measured from the panel edge.
  double stiffener_y(int i) const { return stiffener_spacing * (i + 1); }
};

inline constexpr int kSectionSchemaVersion = 1;

nlohmann::json section_to_json(const PanelSection& s);
PanelSection section_from_json(const nlohmann::json& j);

// Homogenized stiffness of a stiffened panel: membrane A, coupling Bc/C,
// bending D (3x3 blocks), plus transverse shear stiffnesses.
struct AbdStiffness {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();   // N/m
  Eigen::Matrix3d Bc = Eigen::Matrix3d::Zero();  // N
  Eigen::Matrix3d C = Eigen::Matrix3d::Zero();   // N
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();   // N*m
  double d_qx = 0.0;                             // N/m, stiffener direction
  double d_qy = 0.0;                             // N/m, transverse
  double shear_correction = 5.0 / 6.0;

  Eigen::Matrix<double, 6, 6> assembled() const;
  // Symmetry (Bc = C^T) and positive definiteness of the assembled 6x6.
  void validate() const;
};

// Stress resultants at a point of the homogenized shell.
struct ResultantState {
  double nxx = 0, nyy = 0, nxy = 0;  // N/m
  double mxx = 0, myy = 0, mxy = 0;  // N*m/m
  double qx = 0, qy = 0;             // N/m
};

// Mid-plane strains, curvatures and transverse shear strains.
struct StrainState {
  Eigen::Vector3d eps0 = Eigen::Vector3d::Zero();  // exx0, eyy0, gxy0
  Eigen::Vector3d eps1 = Eigen::Vector3d::Zero();  // exx1, eyy1, gxy1 (1/m)
  double gamma_xz = 0, gamma_yz = 0;
};

// Through-thickness integration of the section about the plate mid-plane.
// Web and flange areas are smeared over the spacing s and contribute to the
// 11 terms only; the plate provides the full isotropic blocks.
AbdStiffness abd_from_section(const PanelSection& section);

// Closed forms D_Qx = k G (t_w/s) h_w (web only) and D_Qy = k G t_p.
std::pair<double, double> shear_stiffness(const PanelSection& section, double k = 5.0 / 6.0);

// (eps0, eps1) = [[A,Bc],[C,D]]^-1 (N, M); gamma = Q / d_q.
StrainState invert_abd(const AbdStiffness& stiffness, const ResultantState& resultants);

// Forward constitutive relation, used for round-trip checks and by the
// shell kernel's resultant recovery.
ResultantState forward_abd(const AbdStiffness& stiffness, const StrainState& strains);

}  // namespace hullkit
