#include "leafflow/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace leafflow {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

std::array<double, 3> to_causal(const Point3& p) {
  return {p.z, (p.x + p.y) / kSqrt2, (p.x - p.y) / kSqrt2};
}

namespace {

int push_vertex(MeshFile& mesh, const Family& fam, double c, const Point3& p) {
  mesh.vertices.push_back(to_causal(p));
  const double f = fam.f_value(p);
  const double fc = fam.f_on_leaf(c, p.z);
  mesh.channel_f.push_back(f);
  mesh.channel_fc.push_back(fc);
  int sig = 0;
  if (fc > 1e-9) sig = 1;
  else if (fc < -1e-9) sig = -1;
  mesh.channel_signature.push_back(sig);
  return static_cast<int>(mesh.vertices.size()) - 1;
}

}  // namespace

MeshFile build_leaf_mesh(const Family& family, double c,
                         const MeshOptions& opts) {
  MeshFile mesh;
  const int nz = opts.resolution;
  const int nu = opts.resolution;
  const Interval zi = family.z_interval();
  const double z_lo = std::fmax(zi.lo, -opts.box_half_width);
  const double z_hi = std::fmin(zi.hi, opts.box_half_width);

  // Cross-section at height z: xy = k(z). Two hyperbola branches per
  // sign of x; sections with |k| ~ 0 (leaf meets the axes) are skipped.
  auto section = [&](double z) {
    return std::exp(-family.pp(z)) * (c - family.q(z));
  };

  for (int branch = 0; branch < 2; ++branch) {
    const double sx = branch == 0 ? 1.0 : -1.0;
    std::vector<int> prev_row;
    bool prev_valid = false;
    double prev_sign = 0.0;
    for (int iz = 0; iz < nz; ++iz) {
      const double z = z_lo + (z_hi - z_lo) * iz / (nz - 1);
      const double k = section(z);
      if (std::fabs(k) < 1e-12) {
        prev_valid = false;
        continue;
      }
      const double r = std::sqrt(std::fabs(k));
      std::vector<int> row(nu);
      for (int iu = 0; iu < nu; ++iu) {
        const double u = -opts.u_span + 2.0 * opts.u_span * iu / (nu - 1);
        const double x = sx * r * std::exp(u);
        const double y = (k > 0 ? 1.0 : -1.0) * sx * r * std::exp(-u);
        row[iu] = push_vertex(mesh, family, c, {x, y, z});
      }
      const double k_sign = k > 0 ? 1.0 : -1.0;
      if (prev_valid && k_sign == prev_sign) {
        for (int iu = 0; iu + 1 < nu; ++iu) {
          mesh.triangles.push_back({prev_row[iu], row[iu], row[iu + 1]});
          mesh.triangles.push_back({prev_row[iu], row[iu + 1], prev_row[iu + 1]});
        }
      }
      prev_row = std::move(row);
      prev_valid = true;
      prev_sign = k_sign;
    }
  }
  return mesh;
}

namespace {

Point3 lerp(const Point3& a, const Point3& b, double t) {
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), a.z + t * (b.z - a.z)};
}

// Zero crossing of f on the segment [a, b]; fa and fb have opposite signs.
Point3 edge_zero(const Family& fam, Point3 a, Point3 b, double fa, double fb) {
  for (int it = 0; it < 50; ++it) {
    const Point3 m = lerp(a, b, 0.5);
    const double fm = fam.f_value(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return lerp(a, b, 0.5);
}

int push_red_vertex(MeshFile& mesh, const Family& fam, const Point3& p) {
  mesh.vertices.push_back(to_causal(p));
  mesh.channel_f.push_back(fam.f_value(p));
  mesh.channel_fc.push_back(fam.f_on_leaf(fam.casimir(p), p.z));
  mesh.channel_signature.push_back(0);
  return static_cast<int>(mesh.vertices.size()) - 1;
}

}  // namespace

MeshFile build_red_mesh(const Family& family, const MeshOptions& opts) {
  MeshFile mesh;
  const int n = opts.resolution;
  const double w = opts.box_half_width;
  const double h = 2.0 * w / n;

  // corner offsets of a unit cube
  static const int corner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  // six tetrahedra per cube
  static const int tets[6][4] = {{0, 5, 1, 6}, {0, 1, 2, 6}, {0, 2, 3, 6},
                                 {0, 3, 7, 6}, {0, 7, 4, 6}, {0, 4, 5, 6}};

  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int iz = 0; iz < n; ++iz) {
        Point3 cp[8];
        double fv[8];
        for (int k = 0; k < 8; ++k) {
          cp[k] = {-w + (ix + corner[k][0]) * h, -w + (iy + corner[k][1]) * h,
                   -w + (iz + corner[k][2]) * h};
          fv[k] = family.f_value(cp[k]);
        }
        for (const auto& tet : tets) {
          int pos[4], neg[4];
          int npos = 0, nneg = 0;
          for (int k = 0; k < 4; ++k) {
            if (fv[tet[k]] > 0.0)
              pos[npos++] = tet[k];
            else
              neg[nneg++] = tet[k];
          }
          if (npos == 0 || nneg == 0) continue;
          auto cut = [&](int a, int b) {
            return push_red_vertex(
                mesh, family, edge_zero(family, cp[a], cp[b], fv[a], fv[b]));
          };
          if (npos == 1 || nneg == 1) {
            const int lone = (npos == 1) ? pos[0] : neg[0];
            const int* others = (npos == 1) ? neg : pos;
            const int v0 = cut(lone, others[0]);
            const int v1 = cut(lone, others[1]);
            const int v2 = cut(lone, others[2]);
            mesh.triangles.push_back({v0, v1, v2});
          } else {
            // two on each side: quad split into two triangles
            const int v0 = cut(pos[0], neg[0]);
            const int v1 = cut(pos[0], neg[1]);
            const int v2 = cut(pos[1], neg[1]);
            const int v3 = cut(pos[1], neg[0]);
            mesh.triangles.push_back({v0, v1, v2});
            mesh.triangles.push_back({v0, v2, v3});
          }
        }
      }
  return mesh;
}

void write_obj(const MeshFile& mesh, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot open " + path);
  for (const auto& v : mesh.vertices)
    std::fprintf(out, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
  for (const auto& t : mesh.triangles)
    std::fprintf(out, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
  std::fclose(out);
}

void write_channels_csv(const MeshFile& mesh, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot open " + path);
  std::fprintf(out, "vertex,f,F_c,signature\n");
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    std::fprintf(out, "%zu,%.17g,%.17g,%d\n", i, mesh.channel_f[i],
                 mesh.channel_fc[i], mesh.channel_signature[i]);
  std::fclose(out);
}

}  // namespace leafflow
