#pragma once

#include <vector>

#include "photomech/mesh.hpp"
#include "photomech/tensor.hpp"

namespace photomech {

// Nodal fields over the whole grid. Electronic entries at pure free-space
// nodes are carried but never read. Rate vectors are bookkeeping filled by
// the time steppers for diagnostics and output.
struct FieldState {
  std::vector<double> potential;
  std::vector<Vec3> order_trans;
  std::vector<Vec3> order_cis;
  std::vector<Vec3> position;  // deformed placement of each node
  std::vector<Vec3> order_trans_rate;
  std::vector<Vec3> order_cis_rate;
  std::vector<Vec3> velocity;
  double time = 0;
};

inline FieldState make_reference_state(const HexMesh& mesh) {
  FieldState s;
  const size_t n = mesh.nodes.size();
  s.potential.assign(n, 0.0);
  s.order_trans.assign(n, Vec3{});
  s.order_cis.assign(n, Vec3{});
  s.position = mesh.nodes;
  s.order_trans_rate.assign(n, Vec3{});
  s.order_cis_rate.assign(n, Vec3{});
  s.velocity.assign(n, Vec3{});
  return s;
}

}  // namespace photomech
