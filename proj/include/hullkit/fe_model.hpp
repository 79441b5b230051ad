#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <vector>

#include "hullkit/quad_mesh.hpp"

namespace hullkit {

struct FeOptions {
  bool use_cg = false;       // conjugate gradient with diagonal preconditioning
  double cg_tol = 1e-12;
  int cg_max_iter = 200000;
  bool parallel = true;      // element-parallel assembly (bit-identical to serial)
  double drill_alpha = 1e-6;
  double singular_rel_tol = 1e-10;  // pivot threshold relative to max pivot
};

// Linear static shell model: 6 DOFs per node (u, v, w, tx, ty, tz), global
// frame. Prescribed DOFs are eliminated by row/column reduction with a
// load-vector correction.
class FeModel {
public:
  explicit FeModel(const QuadMesh& mesh);

  void fix(int node, int comp, double value = 0.0);
  void add_force(int node, int comp, double value);
  // Transverse pressure on one patch, positive toward the patch +z (frame e3).
  // The callback receives patch-local coordinates (u in [0, lu], v in [0, lv]).
  void add_patch_pressure(int patch, const std::function<double(double, double)>& p);
  // Gravity-type body load; per-element force/area = mass_per_area * g.
  void add_gravity(const Eigen::Vector3d& g);

  const QuadMesh& mesh() const { return mesh_; }
  const std::vector<double>& prescribed_values() const { return value_; }
  const std::vector<uint8_t>& prescribed_mask() const { return fixed_; }
  const Eigen::VectorXd& applied_loads() const { return load_; }

  int dof_count() const { return 6 * mesh_.node_count(); }

  // Global element stiffness (local stiffness rotated to the global frame).
  Eigen::Matrix<double, 24, 24> elem_stiffness_global(int e, double drill_alpha) const;

private:
  const QuadMesh& mesh_;
  std::vector<uint8_t> fixed_;
  std::vector<double> value_;
  Eigen::VectorXd load_;
};

struct AssembledSystem {
  Eigen::SparseMatrix<double> kff;
  Eigen::VectorXd rhs;
  std::vector<int> free_index;  // dof -> free id, or -1 when prescribed
  std::vector<int> free_dofs;   // free id -> dof
};

// Deterministic assembly: element slices are computed independently (in
// parallel when requested) and merged in element order, so the result is
// bit-identical for any thread count.
AssembledSystem assemble_system(const FeModel& model, const FeOptions& opt);

struct FeSolution {
  Eigen::VectorXd d;          // all DOFs, prescribed values included
  Eigen::VectorXd reactions;  // residual at prescribed DOFs (zero elsewhere)
};

FeSolution solve_fe(const FeModel& model, const FeOptions& opt = {});

// Residual K d - f accumulated element-wise (used for reactions and checks).
Eigen::VectorXd residual(const FeModel& model, const Eigen::VectorXd& d,
                         const FeOptions& opt = {});

// d^T K d, element-wise.
double quadratic_energy(const FeModel& model, const Eigen::VectorXd& d,
                        const FeOptions& opt = {});

// --- structured-patch field queries ---------------------------------------

struct PatchPoint {
  int elem;
  double xi, eta;
};

// Locate patch-local coordinates (u, v) measured from the patch origin.
PatchPoint locate_on_patch(const QuadMesh& mesh, int patch, double u, double v);

// Bilinear interpolation of the 6 global-frame DOFs at a patch point.
Eigen::Matrix<double, 6, 1> interp_dofs(const QuadMesh& mesh, const Eigen::VectorXd& d,
                                        int patch, double u, double v);

struct ShellStrainState {
  Eigen::Vector3d eps0;
  Eigen::Vector3d eps1;
  Eigen::Vector2d gamma;
};

// Element-frame mid-surface strains at a patch point.
ShellStrainState shell_state_at(const QuadMesh& mesh, const Eigen::VectorXd& d, int patch,
                                double u, double v);

// Resultants from the element's section stiffness at a patch point.
ResultantState resultants_at(const QuadMesh& mesh, const Eigen::VectorXd& d, int patch,
                             double u, double v);

}  // namespace hullkit
