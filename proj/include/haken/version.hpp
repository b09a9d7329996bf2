#pragma once

// Version tag of the fixed combinatorial model: the triangulation, the seed
// diagrams, and the canonical key scheme.  Exported artifacts and caches
// carry it; readers reject anything stamped differently.

namespace haken {

inline constexpr const char* kModelVersion = "g2.octagon-fan.1";

}  // namespace haken
