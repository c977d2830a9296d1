#pragma once

#include <array>
#include <string_view>

namespace dhzero {

/// Stored high-precision evaluations at the exceptional points s1..s4
/// and at the first two critical-line zeros used for comparison.
struct ReferenceRow {
  std::string_view name;
  std::string_view s;
  std::string_view f_abs;
  std::string_view f1s_abs;
  std::string_view ratio;
  std::string_view x_abs;
  std::string_view classification;  // "Approximate Zero" or "Strict Zero"
};

inline constexpr std::array<ReferenceRow, 6> kReferenceRows{{
    {"s1", "0.808517+85.699348i", "1.449e-219", "5.416e-218", "0.02673", "0.2272", "Approximate Zero"},
    {"s2", "0.574356+166.479306i", "3.731e-205", "1.036e-204", "0.3603", "0.6954", "Approximate Zero"},
    {"s3", "0.650830+114.163343i", "7.136e-208", "4.772e-207", "0.1495", "0.5066", "Approximate Zero"},
    {"s4", "0.724258+176.702461i", "2.428e-224", "5.495e-223", "0.0442", "0.3298", "Approximate Zero"},
    {"z1", "0.5+14.404003i", "3.729e-274", "3.729e-274", "1.000", "1.000", "Strict Zero"},
    {"z2", "0.5+23.345370i", "2.935e-393", "2.935e-393", "1.000", "1.000", "Strict Zero"},
}};

/// Reference kappa threshold.
inline constexpr std::string_view kReferenceKappa = "1.21164";

}  // namespace dhzero
