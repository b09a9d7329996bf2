// A short tour: build the genus-2 diagram of L(3, 1), look at its disks,
// assemble a Haken sphere from a dual pair, then explore the budgeted
// sphere complex and check the hexagon census the hard way.

#include <haken/complexes.hpp>

#include <cstdio>

using namespace haken;

int main() {
  const HeegaardDiagram d = build_diagram(3, 1);
  std::printf("L(%d,%d), model %s\n", d.p, d.q, kModelVersion);

  // Disk classes on the two sides at a small weight budget.
  const auto& v_disks = enumerate_disks(d, Handlebody::V, 6);
  const auto& w_disks = enumerate_disks(d, Handlebody::W, 6);
  const auto prim = enumerate_primitive_disks(d, Handlebody::V, 6);
  std::printf("weight <= 6: %zu V disks (%zu primitive), %zu W disks\n", v_disks.size(),
              prim.size(), w_disks.size());

  // A dual pair is a Haken sphere: i(boundary, boundary) = 1.
  const DiskClass base = prim.front();
  const auto duals = dual_disks(d, base, 6);
  std::printf("disk %s has %zu duals at weight 6", base.key.c_str(), duals.size());
  if (!duals.empty()) {
    const DualPair sphere = make_dual_pair(d, base, duals.front());
    std::printf("; sphere %s", sphere.key.c_str());
  }
  std::printf("\n");

  // The sphere complex at budget 10, and the structure the theorems name:
  // triangle-free, and every light edge on exactly one hexagon.
  const ComplexGraph g = build_sphere_complex(d, 10);
  std::printf("sphere complex at weight 10: %zu vertices, %zu edges\n", g.vertices.size(),
              g.edges.size());

  bool failed = false;
  for (const char* suite : {"no-3-cycles", "L31-6-cycles"}) {
    const VerifierReport r = verify(d, suite, 10);
    failed |= r.failed();
    for (const PropertyResult& p : r.properties)
      std::printf("  %s [%s] %s\n", p.name.c_str(), verdict_name(p.verdict), p.details.c_str());
  }
  return failed ? 1 : 0;
}
