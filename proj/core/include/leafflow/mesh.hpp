#pragma once

#include <array>
#include <string>
#include <vector>

#include "leafflow/family.hpp"

namespace leafflow {

// Triangle mesh in causal coordinates X = z, Y = (x+y)/sqrt2,
// T = (x-y)/sqrt2, with per-vertex scalar channels.
struct MeshFile {
  std::vector<std::array<double, 3>> vertices;  // (X, Y, T)
  std::vector<std::array<int, 3>> triangles;
  std::vector<double> channel_f;
  std::vector<double> channel_fc;
  std::vector<int> channel_signature;  // +1 Lorentzian, -1 Euclidean, 0 red

  bool empty() const { return triangles.empty(); }
};

struct MeshOptions {
  int resolution = 64;
  double box_half_width = 3.0;  // red-zone bounding box [-w, w]^3
  double u_span = 2.0;          // hyperbola parameter range on leaf sections
};

std::array<double, 3> to_causal(const Point3& p);

// Leaf S_c sampled section by section: for each z the leaf cross-section
// is the hyperbola xy = e^{-P}(c - Q), traced per branch.
MeshFile build_leaf_mesh(const Family& family, double c,
                         const MeshOptions& opts);

// Implicit surface f = 0 extracted by marching tetrahedra on a box grid.
MeshFile build_red_mesh(const Family& family, const MeshOptions& opts);

void write_obj(const MeshFile& mesh, const std::string& path);
void write_channels_csv(const MeshFile& mesh, const std::string& path);

}  // namespace leafflow
