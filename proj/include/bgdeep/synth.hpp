#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bgdeep/cgm_data.hpp"

namespace bgdeep {

struct SynthProfile {
  std::string name;
  double noise_sigma = 0.0;  // mg/dL, additive Gaussian
};

/// "noiseless" (sigma 0) or "noisy" (sigma 5).
SynthProfile synth_profile(const std::string& name);

/// Smooth synthetic CGM traces on a 5-minute grid: per-patient baseline near
/// 120 mg/dL, postprandial excursions into 180-300, one prolonged dip into
/// the 50-70 band, optional additive noise, clipped to [40, 450]. The shape
/// mimics the pediatric pattern the method targets, so all three glycemic
/// ranges are populated even at desk scale. Deterministic per seed.
std::vector<CgmSeries> synth_generate(int n_patients, int n_points,
                                      std::uint64_t seed, const SynthProfile& profile);

}  // namespace bgdeep
