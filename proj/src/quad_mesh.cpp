#include "hullkit/quad_mesh.hpp"

#include <cmath>

#include "hullkit/errors.hpp"

namespace hullkit {

std::array<Eigen::Vector3d, 4> QuadMesh::elem_coords(int e) const {
  const Elem& el = elems[e];
  return {nodes[el.n[0]], nodes[el.n[1]], nodes[el.n[2]], nodes[el.n[3]]};
}

std::array<Eigen::Vector2d, 4> QuadMesh::elem_local_xy(int e) const {
  const Elem& el = elems[e];
  std::array<Eigen::Vector2d, 4> xy;
  const Eigen::Vector3d& p0 = nodes[el.n[0]];
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector3d d = el.frame * (nodes[el.n[i]] - p0);
    xy[i] = d.head<2>();
  }
  return xy;
}

int MeshBuilder::add_section(const ShellStiffness& s) {
  mesh_.sections.push_back(s);
  return static_cast<int>(mesh_.sections.size()) - 1;
}

int MeshBuilder::add_node(const Eigen::Vector3d& p) {
  auto quant = [](double v) { return static_cast<int64_t>(std::llround(v * 1e9)); };
  Key k{quant(p.x()), quant(p.y()), quant(p.z())};
  auto it = lookup_.find(k);
  if (it != lookup_.end()) return it->second;
  int id = static_cast<int>(mesh_.nodes.size());
  mesh_.nodes.push_back(p);
  lookup_.emplace(k, id);
  return id;
}

int MeshBuilder::add_patch(const Eigen::Vector3d& origin, const Eigen::Vector3d& du_dir,
                           double lu, const Eigen::Vector3d& dv_dir, double lv, int nu,
                           int nv, int section) {
  if (nu < 1 || nv < 1) throw ConfigError("mesh patch: subdivisions must be >= 1");
  QuadMesh::Patch p;
  p.origin = origin;
  p.du = du_dir.normalized();
  p.dv = dv_dir.normalized();
  p.lu = lu;
  p.lv = lv;
  p.nu = nu;
  p.nv = nv;
  p.section = section;
  p.frame.row(0) = p.du;
  p.frame.row(1) = p.dv;
  p.frame.row(2) = p.du.cross(p.dv);
  p.first_elem = static_cast<int>(mesh_.elems.size());

  p.grid.resize((nu + 1) * (nv + 1));
  for (int iv = 0; iv <= nv; ++iv) {
    for (int iu = 0; iu <= nu; ++iu) {
      Eigen::Vector3d pos =
          origin + p.du * (lu * iu / nu) + p.dv * (lv * iv / nv);
      p.grid[iu + (nu + 1) * iv] = add_node(pos);
    }
  }
  int patch_id = static_cast<int>(mesh_.patches.size());
  for (int iv = 0; iv < nv; ++iv) {
    for (int iu = 0; iu < nu; ++iu) {
      QuadMesh::Elem e;
      e.n = {p.node_at(iu, iv), p.node_at(iu + 1, iv), p.node_at(iu + 1, iv + 1),
             p.node_at(iu, iv + 1)};
      e.section = section;
      e.frame = p.frame;
      e.patch = patch_id;
      mesh_.elems.push_back(e);
    }
  }
  mesh_.patches.push_back(std::move(p));
  return patch_id;
}

QuadMesh MeshBuilder::take() { return std::move(mesh_); }

}  // namespace hullkit
