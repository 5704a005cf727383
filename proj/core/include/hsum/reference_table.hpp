#pragma once

#include <array>
#include <span>
#include <string_view>

namespace hsum {

// Published per-subject mean absolute errors (BPM) on the 12-recording
// IEEE SP cup treadmill corpus, for rendering comparison tables next to a
// fresh evaluation. Values are reproduced verbatim from the respective
// publications.
struct ReferenceRow {
  std::string_view method;
  std::array<double, 12> mae_bpm;
};

std::span<const ReferenceRow> reference_table();

// Case-insensitive method name, 1-based subject (S1..S12).
// Throws InputError on an unknown method or subject.
double reference_lookup(std::string_view method, int subject);

}  // namespace hsum
