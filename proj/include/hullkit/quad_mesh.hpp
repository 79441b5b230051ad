#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hullkit/shell_element.hpp"

namespace hullkit {

// Quadrilateral shell mesh built from structured rectangular patches.
// Coincident nodes (within 1e-9 m) are welded, so conforming junction lines
// between patches share nodes automatically.
struct QuadMesh {
  struct Elem {
    std::array<int, 4> n;       // node ids, counterclockwise in the local frame
    int section = -1;           // index into sections
    Eigen::Matrix3d frame;      // rows e1 (local x), e2 (local y), e3 (normal)
    int patch = -1;
  };

  // Structured patch bookkeeping: grid of (nu+1) x (nv+1) nodes covering a
  // rectangle spanned by unit vectors du (local x) and dv (local y).
  struct Patch {
    Eigen::Vector3d origin;
    Eigen::Vector3d du, dv;     // unit direction vectors
    double lu = 0, lv = 0;      // side lengths
    int nu = 0, nv = 0;         // element subdivisions
    int section = -1;
    Eigen::Matrix3d frame;
    std::vector<int> grid;      // node ids, index iu + (nu+1)*iv
    int first_elem = 0;

    int node_at(int iu, int iv) const { return grid[iu + (nu + 1) * iv]; }
  };

  std::vector<Eigen::Vector3d> nodes;
  std::vector<Elem> elems;
  std::vector<ShellStiffness> sections;
  std::vector<Patch> patches;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int elem_count() const { return static_cast<int>(elems.size()); }

  std::array<Eigen::Vector2d, 4> elem_local_xy(int e) const;
  std::array<Eigen::Vector3d, 4> elem_coords(int e) const;
};

class MeshBuilder {
public:
  int add_section(const ShellStiffness& s);
  // Adds a structured patch; du/dv need not be unit length (normalized here).
  // Element frames use e1 = du, e2 = dv, e3 = du x dv.
  int add_patch(const Eigen::Vector3d& origin, const Eigen::Vector3d& du_dir, double lu,
                const Eigen::Vector3d& dv_dir, double lv, int nu, int nv, int section);
  int add_node(const Eigen::Vector3d& p);

  QuadMesh take();
  const QuadMesh& mesh() const { return mesh_; }

private:
  QuadMesh mesh_;
  struct Key {
    int64_t x, y, z;
    bool operator==(const Key& o) const { return x == o.x && y == o.y && z == o.z; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      size_t h = std::hash<int64_t>()(k.x);
      h ^= std::hash<int64_t>()(k.y) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= std::hash<int64_t>()(k.z) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };
  std::unordered_map<Key, int, KeyHash> lookup_;
};

}  // namespace hullkit
