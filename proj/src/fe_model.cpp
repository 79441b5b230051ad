#include "hullkit/fe_model.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "hullkit/errors.hpp"

namespace hullkit {

FeModel::FeModel(const QuadMesh& mesh) : mesh_(mesh) {
  fixed_.assign(dof_count(), 0);
  value_.assign(dof_count(), 0.0);
  load_ = Eigen::VectorXd::Zero(dof_count());
}

void FeModel::fix(int node, int comp, double value) {
  int dof = 6 * node + comp;
  fixed_[dof] = 1;
  value_[dof] = value;
}

void FeModel::add_force(int node, int comp, double value) {
  load_(6 * node + comp) += value;
}

void FeModel::add_patch_pressure(int patch, const std::function<double(double, double)>& p) {
  const QuadMesh::Patch& pa = mesh_.patches[patch];
  double hu = pa.lu / pa.nu, hv = pa.lv / pa.nv;
  for (int iv = 0; iv < pa.nv; ++iv) {
    for (int iu = 0; iu < pa.nu; ++iu) {
      int e = pa.first_elem + iu + pa.nu * iv;
      auto xy = mesh_.elem_local_xy(e);
      double u0 = iu * hu, v0 = iv * hv;
      // element-local coordinates coincide with patch offsets from node 0
      Eigen::Matrix<double, 24, 1> fl =
          shell::pressure_load(xy, [&](double x, double y) { return p(u0 + x, v0 + y); });
      const QuadMesh::Elem& el = mesh_.elems[e];
      const Eigen::Matrix3d rt = el.frame.transpose();
      for (int i = 0; i < 4; ++i) {
        Eigen::Vector3d ft = rt * fl.segment<3>(6 * i);
        Eigen::Vector3d mt = rt * fl.segment<3>(6 * i + 3);
        load_.segment<3>(6 * el.n[i]) += ft;
        load_.segment<3>(6 * el.n[i] + 3) += mt;
      }
    }
  }
}

void FeModel::add_gravity(const Eigen::Vector3d& g) {
  for (int e = 0; e < mesh_.elem_count(); ++e) {
    const QuadMesh::Elem& el = mesh_.elems[e];
    const ShellStiffness& s = mesh_.sections[el.section];
    Eigen::Vector3d f_local = el.frame * (s.mass_per_area * g);
    auto xy = mesh_.elem_local_xy(e);
    Eigen::Matrix<double, 24, 1> fl = shell::body_load(xy, f_local);
    const Eigen::Matrix3d rt = el.frame.transpose();
    for (int i = 0; i < 4; ++i) {
      load_.segment<3>(6 * el.n[i]) += rt * fl.segment<3>(6 * i);
      load_.segment<3>(6 * el.n[i] + 3) += rt * fl.segment<3>(6 * i + 3);
    }
  }
}

Eigen::Matrix<double, 24, 24> FeModel::elem_stiffness_global(int e, double drill_alpha) const {
  const QuadMesh::Elem& el = mesh_.elems[e];
  auto xy = mesh_.elem_local_xy(e);
  Eigen::Matrix<double, 24, 24> kl =
      shell::local_stiffness(xy, mesh_.sections[el.section], drill_alpha);
  Eigen::Matrix<double, 24, 24> t = Eigen::Matrix<double, 24, 24>::Zero();
  for (int b = 0; b < 8; ++b) t.block<3, 3>(3 * b, 3 * b) = el.frame;
  return t.transpose() * kl * t;
}

AssembledSystem assemble_system(const FeModel& model, const FeOptions& opt) {
  const QuadMesh& mesh = model.mesh();
  const auto& fixed = model.prescribed_mask();
  const auto& pval = model.prescribed_values();
  const int ndof = model.dof_count();

  AssembledSystem sys;
  sys.free_index.assign(ndof, -1);
  for (int i = 0; i < ndof; ++i) {
    if (!fixed[i]) {
      sys.free_index[i] = static_cast<int>(sys.free_dofs.size());
      sys.free_dofs.push_back(i);
    }
  }
  const int nfree = static_cast<int>(sys.free_dofs.size());
  const int ne = mesh.elem_count();

  // Per-element slices keep the merge order fixed regardless of thread count.
  std::vector<Eigen::Triplet<double>> trips(static_cast<size_t>(ne) * 576,
                                            Eigen::Triplet<double>(0, 0, 0.0));
  std::vector<double> corr(static_cast<size_t>(ne) * 24, 0.0);
  std::vector<int> corr_dof(static_cast<size_t>(ne) * 24, -1);

#pragma omp parallel for schedule(static) if (opt.parallel)
  for (int e = 0; e < ne; ++e) {
    Eigen::Matrix<double, 24, 24> k = model.elem_stiffness_global(e, opt.drill_alpha);
    const QuadMesh::Elem& el = mesh.elems[e];
    int dofs[24];
    for (int i = 0; i < 4; ++i)
      for (int c = 0; c < 6; ++c) dofs[6 * i + c] = 6 * el.n[i] + c;
    size_t t0 = static_cast<size_t>(e) * 576;
    size_t c0 = static_cast<size_t>(e) * 24;
    size_t t = 0;
    for (int a = 0; a < 24; ++a) {
      int ga = dofs[a];
      int fa = sys.free_index[ga];
      if (fa < 0) continue;
      corr_dof[c0 + a] = fa;
      for (int b = 0; b < 24; ++b) {
        int gb = dofs[b];
        int fb = sys.free_index[gb];
        if (fb >= 0) {
          trips[t0 + t++] = Eigen::Triplet<double>(fa, fb, k(a, b));
        } else if (pval[gb] != 0.0) {
          corr[c0 + a] -= k(a, b) * pval[gb];
        }
      }
    }
  }

  sys.rhs = Eigen::VectorXd::Zero(nfree);
  const Eigen::VectorXd& f = model.applied_loads();
  for (int i = 0; i < nfree; ++i) sys.rhs(i) = f(sys.free_dofs[i]);
  for (size_t i = 0; i < corr.size(); ++i)
    if (corr_dof[i] >= 0) sys.rhs(corr_dof[i]) += corr[i];

  sys.kff.resize(nfree, nfree);
  sys.kff.setFromTriplets(trips.begin(), trips.end());
  sys.kff.makeCompressed();
  return sys;
}

static std::string dof_name(const QuadMesh& mesh, int dof) {
  static const char* comps[6] = {"u", "v", "w", "tx", "ty", "tz"};
  int node = dof / 6, c = dof % 6;
  std::ostringstream os;
  os << comps[c] << " at node " << node << " (" << mesh.nodes[node].transpose() << ")";
  return os.str();
}

FeSolution solve_fe(const FeModel& model, const FeOptions& opt) {
  AssembledSystem sys = assemble_system(model, opt);
  const int nfree = static_cast<int>(sys.free_dofs.size());
  if (nfree == 0) {
    FeSolution out;
    out.d = Eigen::VectorXd::Zero(model.dof_count());
    for (int i = 0; i < model.dof_count(); ++i)
      if (model.prescribed_mask()[i]) out.d(i) = model.prescribed_values()[i];
    out.reactions = residual(model, out.d, opt);
    return out;
  }

  Eigen::VectorXd df(nfree);
  if (opt.use_cg) {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(opt.cg_tol);
    cg.setMaxIterations(opt.cg_max_iter);
    cg.compute(sys.kff);
    df = cg.solve(sys.rhs);
    if (cg.info() != Eigen::Success) {
      std::ostringstream os;
      os << "conjugate gradient did not converge: residual " << cg.error() << " after "
         << cg.iterations() << " iterations";
      throw SolverError(os.str());
    }
  } else {
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(sys.kff);
    if (ldlt.info() != Eigen::Success)
      throw SolverError("sparse factorization failed (structurally singular system)");
    const Eigen::VectorXd& dvec = ldlt.vectorD();
    double dmax = dvec.cwiseAbs().maxCoeff();
    int kmin = 0;
    double amin = dvec.cwiseAbs().minCoeff(&kmin);
    if (!(dmax > 0.0) || amin < opt.singular_rel_tol * dmax || dvec.minCoeff() < -opt.singular_rel_tol * dmax) {
      // map the offending pivot back to a mesh DOF to name the mode
      int orig_free = ldlt.permutationPinv().indices()(kmin);
      int dof = sys.free_dofs[std::clamp(orig_free, 0, nfree - 1)];
      std::ostringstream os;
      os << "singular stiffness: unconstrained mode near DOF " << dof_name(model.mesh(), dof)
         << " (pivot " << dvec(kmin) << ", max " << dmax << ")";
      throw SolverError(os.str());
    }
    df = ldlt.solve(sys.rhs);
  }
  if (!df.allFinite()) throw SolverError("non-finite solution");

  FeSolution out;
  out.d = Eigen::VectorXd::Zero(model.dof_count());
  for (int i = 0; i < model.dof_count(); ++i)
    if (model.prescribed_mask()[i]) out.d(i) = model.prescribed_values()[i];
  for (int i = 0; i < nfree; ++i) out.d(sys.free_dofs[i]) = df(i);

  Eigen::VectorXd r = residual(model, out.d, opt);
  out.reactions = Eigen::VectorXd::Zero(model.dof_count());
  for (int i = 0; i < model.dof_count(); ++i)
    if (model.prescribed_mask()[i]) out.reactions(i) = r(i);
  return out;
}

Eigen::VectorXd residual(const FeModel& model, const Eigen::VectorXd& d,
                         const FeOptions& opt) {
  const QuadMesh& mesh = model.mesh();
  const int ne = mesh.elem_count();
  Eigen::VectorXd r = -model.applied_loads();
  std::vector<Eigen::Matrix<double, 24, 1>> fe(ne);
#pragma omp parallel for schedule(static) if (opt.parallel)
  for (int e = 0; e < ne; ++e) {
    Eigen::Matrix<double, 24, 24> k = model.elem_stiffness_global(e, opt.drill_alpha);
    Eigen::Matrix<double, 24, 1> de;
    const QuadMesh::Elem& el = mesh.elems[e];
    for (int i = 0; i < 4; ++i) de.segment<6>(6 * i) = d.segment<6>(6 * el.n[i]);
    fe[e] = k * de;
  }
  for (int e = 0; e < ne; ++e) {
    const QuadMesh::Elem& el = mesh.elems[e];
    for (int i = 0; i < 4; ++i) r.segment<6>(6 * el.n[i]) += fe[e].segment<6>(6 * i);
  }
  return r;
}

double quadratic_energy(const FeModel& model, const Eigen::VectorXd& d,
                        const FeOptions& opt) {
  const QuadMesh& mesh = model.mesh();
  double sum = 0.0;
  for (int e = 0; e < mesh.elem_count(); ++e) {
    Eigen::Matrix<double, 24, 24> k = model.elem_stiffness_global(e, opt.drill_alpha);
    Eigen::Matrix<double, 24, 1> de;
    const QuadMesh::Elem& el = mesh.elems[e];
    for (int i = 0; i < 4; ++i) de.segment<6>(6 * i) = d.segment<6>(6 * el.n[i]);
    sum += de.dot(k * de);
  }
  return sum;
}

PatchPoint locate_on_patch(const QuadMesh& mesh, int patch, double u, double v) {
  const QuadMesh::Patch& p = mesh.patches[patch];
  double hu = p.lu / p.nu, hv = p.lv / p.nv;
  double eps = 1e-12 * std::max(p.lu, p.lv);
  if (u < -eps || u > p.lu + eps || v < -eps || v > p.lv + eps)
    throw ConfigError("patch point outside patch");
  int iu = std::min(static_cast<int>(std::floor(u / hu)), p.nu - 1);
  int iv = std::min(static_cast<int>(std::floor(v / hv)), p.nv - 1);
  iu = std::max(iu, 0);
  iv = std::max(iv, 0);
  PatchPoint pt;
  pt.elem = p.first_elem + iu + p.nu * iv;
  pt.xi = 2.0 * (u - iu * hu) / hu - 1.0;
  pt.eta = 2.0 * (v - iv * hv) / hv - 1.0;
  pt.xi = std::clamp(pt.xi, -1.0, 1.0);
  pt.eta = std::clamp(pt.eta, -1.0, 1.0);
  return pt;
}

Eigen::Matrix<double, 6, 1> interp_dofs(const QuadMesh& mesh, const Eigen::VectorXd& d,
                                        int patch, double u, double v) {
  PatchPoint pt = locate_on_patch(mesh, patch, u, v);
  Eigen::Vector4d n = shell::shape(pt.xi, pt.eta);
  const QuadMesh::Elem& el = mesh.elems[pt.elem];
  Eigen::Matrix<double, 6, 1> out = Eigen::Matrix<double, 6, 1>::Zero();
  for (int i = 0; i < 4; ++i) out += n(i) * d.segment<6>(6 * el.n[i]);
  return out;
}

ShellStrainState shell_state_at(const QuadMesh& mesh, const Eigen::VectorXd& d, int patch,
                                double u, double v) {
  PatchPoint pt = locate_on_patch(mesh, patch, u, v);
  const QuadMesh::Elem& el = mesh.elems[pt.elem];
  auto xy = mesh.elem_local_xy(pt.elem);
  shell::StrainOps ops = shell::strain_ops(xy, pt.xi, pt.eta);
  Eigen::Matrix<double, 24, 1> de;
  for (int i = 0; i < 4; ++i) {
    de.segment<3>(6 * i) = el.frame * d.segment<3>(6 * el.n[i]);
    de.segment<3>(6 * i + 3) = el.frame * d.segment<3>(6 * el.n[i] + 3);
  }
  ShellStrainState st;
  st.eps0 = ops.bm * de;
  st.eps1 = ops.bb * de;
  st.gamma = ops.bs * de;
  return st;
}

ResultantState resultants_at(const QuadMesh& mesh, const Eigen::VectorXd& d, int patch,
                             double u, double v) {
  PatchPoint pt = locate_on_patch(mesh, patch, u, v);
  const ShellStiffness& s = mesh.sections[mesh.elems[pt.elem].section];
  ShellStrainState st = shell_state_at(mesh, d, patch, u, v);
  ResultantState r;
  Eigen::Vector3d n = s.A * st.eps0 + s.B * st.eps1;
  Eigen::Vector3d m = s.C * st.eps0 + s.D * st.eps1;
  r.nxx = n(0);
  r.nyy = n(1);
  r.nxy = n(2);
  r.mxx = m(0);
  r.myy = m(1);
  r.mxy = m(2);
  r.qx = s.dqx * st.gamma(0);
  r.qy = s.dqy * st.gamma(1);
  return r;
}

}  // namespace hullkit
