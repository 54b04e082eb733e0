#pragma once

// Segmented-mesh assets: OBJ + label-file loading, normalization into the
// canonical object frame, and deterministic surface sampling.

#include <array>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "artic/core.hpp"

namespace artic {

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Vec3> colors;  // per-vertex, empty when the OBJ carries none
  std::vector<std::array<int, 3>> faces;

  bool has_colors() const { return !colors.empty(); }
};

struct PartCloud {
  std::vector<Vec3> points;
  std::vector<Vec3> normals;
  std::vector<Vec3> colors;

  std::size_t size() const { return points.size(); }
};

struct PartSegment {
  std::string name;
  TriMesh mesh;
  PartCloud cloud;  // filled by the pipeline after sampling
};

struct Normalization {
  double scale = 1.0;      // applied after centering
  Vec3 center = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return (p - center) * scale; }
  Vec3 invert(const Vec3& p) const { return p / scale + center; }
};

struct SegmentedObject {
  std::string name;
  std::vector<PartSegment> parts;
  Normalization normalization;

  int part_index(const std::string& part_name) const {
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (parts[i].name == part_name) return static_cast<int>(i);
    return -1;
  }
};

namespace detail {

inline double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// OBJ I/O

struct ObjData {
  TriMesh mesh;
  std::vector<int> face_line_of_triangle;  // polygon index per triangle, for labels
  int face_line_count = 0;
};

inline ObjData load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file: " + path.string());
  ObjData out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z))
        throw Error("malformed vertex at line " + std::to_string(line_no) + " in " +
                    path.string());
      out.mesh.vertices.emplace_back(x, y, z);
      double r, g, b;
      if (ls >> r >> g >> b) {
        out.mesh.colors.emplace_back(r, g, b);
      } else if (!out.mesh.colors.empty()) {
        throw Error("inconsistent vertex colors in " + path.string());
      }
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        // accept v, v/vt, v//vn, v/vt/vn references; only the vertex id is used
        std::size_t slash = tok.find('/');
        int v = std::stoi(slash == std::string::npos ? tok : tok.substr(0, slash));
        if (v < 0) v = static_cast<int>(out.mesh.vertices.size()) + v + 1;
        if (v < 1 || v > static_cast<int>(out.mesh.vertices.size()))
          throw Error("face index out of range at line " + std::to_string(line_no) +
                      " in " + path.string());
        idx.push_back(v - 1);
      }
      if (idx.size() < 3)
        throw Error("face with fewer than 3 vertices at line " +
                    std::to_string(line_no) + " in " + path.string());
      for (std::size_t i = 1; i + 1 < idx.size(); ++i) {
        out.mesh.faces.push_back({idx[0], idx[i], idx[i + 1]});
        out.face_line_of_triangle.push_back(out.face_line_count);
      }
      ++out.face_line_count;
    }
  }
  if (!out.mesh.colors.empty() && out.mesh.colors.size() != out.mesh.vertices.size())
    throw Error("inconsistent vertex colors in " + path.string());
  return out;
}

inline void save_obj(const std::filesystem::path& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write mesh file: " + path.string());
  out.precision(12);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    out << "v " << v.x() << " " << v.y() << " " << v.z();
    if (mesh.has_colors()) {
      const Vec3& c = mesh.colors[i];
      out << " " << c.x() << " " << c.y() << " " << c.z();
    }
    out << "\n";
  }
  for (const auto& f : mesh.faces)
    out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
  if (!out) throw Error("write failed: " + path.string());
}

inline std::vector<std::string> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open label file: " + path.string());
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    labels.push_back(trim(line));
  }
  // ignore trailing blank lines, but blank labels in the middle are an error
  while (!labels.empty() && labels.back().empty()) labels.pop_back();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i].empty())
      throw Error("blank part label at line " + std::to_string(i + 1) + " in " +
                  path.string());
  return labels;
}

// Splits an OBJ into per-part meshes using one label per OBJ face line.
// Every face must be labeled; the label list order defines part order.
inline SegmentedObject load_segmented_mesh(const std::filesystem::path& mesh_path,
                                           const std::filesystem::path& labels_path) {
  ObjData obj = load_obj(mesh_path);
  std::vector<std::string> labels = load_labels(labels_path);
  if (static_cast<int>(labels.size()) != obj.face_line_count)
    throw Error("label/face count mismatch: " + std::to_string(labels.size()) +
                " labels for " + std::to_string(obj.face_line_count) + " faces");

  SegmentedObject object;
  object.name = mesh_path.stem().string();
  std::vector<std::string> order;
  for (const auto& l : labels)
    if (std::find(order.begin(), order.end(), l) == order.end()) order.push_back(l);

  for (const auto& part_name : order) {
    PartSegment part;
    part.name = part_name;
    std::vector<int> vmap(obj.mesh.vertices.size(), -1);
    for (std::size_t t = 0; t < obj.mesh.faces.size(); ++t) {
      if (labels[obj.face_line_of_triangle[t]] != part_name) continue;
      std::array<int, 3> tri{};
      for (int k = 0; k < 3; ++k) {
        int v = obj.mesh.faces[t][k];
        if (vmap[v] < 0) {
          vmap[v] = static_cast<int>(part.mesh.vertices.size());
          part.mesh.vertices.push_back(obj.mesh.vertices[v]);
          if (obj.mesh.has_colors()) part.mesh.colors.push_back(obj.mesh.colors[v]);
        }
        tri[k] = vmap[v];
      }
      part.mesh.faces.push_back(tri);
    }
    if (part.mesh.faces.empty()) throw Error("empty part: " + part_name);
    object.parts.push_back(std::move(part));
  }
  return object;
}

// ---------------------------------------------------------------------------
// Normalization: scale the whole object so its bounding-box diagonal is 1 and
// the box center sits at the origin.  The transform is recorded so results can
// be mapped back to the input frame.

inline std::pair<Vec3, Vec3> object_bbox(const SegmentedObject& object) {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const auto& part : object.parts)
    for (const auto& v : part.mesh.vertices) {
      lo = lo.cwiseMin(v);
      hi = hi.cwiseMax(v);
    }
  if (!lo.allFinite() || !hi.allFinite()) throw Error("object has no vertices");
  return {lo, hi};
}

inline void normalize_object(SegmentedObject& object) {
  auto [lo, hi] = object_bbox(object);
  double diag = (hi - lo).norm();
  if (diag <= 0.0) throw Error("degenerate object: zero bounding box diagonal");
  Normalization step;
  step.center = 0.5 * (lo + hi);
  step.scale = 1.0 / diag;
  for (auto& part : object.parts) {
    for (auto& v : part.mesh.vertices) v = step.apply(v);
    for (auto& p : part.cloud.points) p = step.apply(p);
  }
  // compose with whatever normalization was already recorded
  Normalization& n = object.normalization;
  n.center = n.invert(step.center);
  n.scale *= step.scale;
}

// ---------------------------------------------------------------------------
// Surface sampling: per-triangle counts follow exact area proportions (largest
// remainder), point positions are uniform within each triangle.  The sampler is
// a pure function of (mesh, n, seed).

inline PartCloud sample_part_cloud(const PartSegment& part, int n, std::uint64_t seed) {
  if (n <= 0) throw Error("sample count must be positive");
  const TriMesh& mesh = part.mesh;
  if (mesh.faces.empty()) throw Error("empty part: " + part.name);

  std::vector<double> areas(mesh.faces.size());
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.faces.size(); ++t) {
    const auto& f = mesh.faces[t];
    areas[t] = detail::triangle_area(mesh.vertices[f[0]], mesh.vertices[f[1]],
                                     mesh.vertices[f[2]]);
    total += areas[t];
  }
  if (total <= 0.0) throw Error("degenerate part surface: " + part.name);

  // largest-remainder allocation
  std::vector<int> counts(mesh.faces.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  remainders.reserve(mesh.faces.size());
  int assigned = 0;
  for (std::size_t t = 0; t < mesh.faces.size(); ++t) {
    double exact = n * areas[t] / total;
    counts[t] = static_cast<int>(std::floor(exact));
    assigned += counts[t];
    remainders.emplace_back(exact - counts[t], t);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int i = 0; i < n - assigned; ++i) counts[remainders[i].second] += 1;

  PartCloud cloud;
  cloud.points.reserve(n);
  cloud.normals.reserve(n);
  cloud.colors.reserve(n);
  Rng rng(seed, fnv1a(part.name));
  for (std::size_t t = 0; t < mesh.faces.size(); ++t) {
    if (counts[t] == 0) continue;
    const auto& f = mesh.faces[t];
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    Vec3 nrm = (b - a).cross(c - a);
    double len = nrm.norm();
    nrm = len > 0 ? Vec3(nrm / len) : Vec3(0, 0, 1);
    for (int i = 0; i < counts[t]; ++i) {
      double u = rng.uniform();
      double v = rng.uniform();
      if (u + v > 1.0) {
        u = 1.0 - u;
        v = 1.0 - v;
      }
      cloud.points.push_back(a + u * (b - a) + v * (c - a));
      cloud.normals.push_back(nrm);
      if (mesh.has_colors()) {
        cloud.colors.push_back((1.0 - u - v) * mesh.colors[f[0]] +
                               u * mesh.colors[f[1]] + v * mesh.colors[f[2]]);
      } else {
        cloud.colors.push_back(Vec3(1, 1, 1));
      }
    }
  }
  return cloud;
}

inline Vec3 cloud_centroid(const PartCloud& cloud) {
  if (cloud.points.empty()) throw Error("centroid of empty cloud");
  Vec3 sum = Vec3::Zero();
  for (const auto& p : cloud.points) sum += p;
  return sum / static_cast<double>(cloud.points.size());
}

}  // namespace artic
