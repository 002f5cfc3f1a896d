#pragma once

#include <cstdint>

namespace gcsim {

// The two session shapes: ship F whole and evaluate locally, or stream
// instructions and keep the evaluator's footprint small.
enum class Mode : uint8_t { MaxPerformance = 0, ResourceEfficient = 1 };

const char* mode_name(Mode m);

} // namespace gcsim
