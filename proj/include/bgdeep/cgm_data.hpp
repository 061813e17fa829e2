#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bgdeep {

/// One patient's glucose trace. Times are minutes since the patient's first
/// reading, strictly increasing; values are mg/dL in [0, 1000].
struct CgmSeries {
  std::string patient_id;
  std::vector<double> times;
  std::vector<double> values;
};

/// One training/evaluation sample: d consecutive readings (oldest first) and
/// the reading m steps after the last one.
struct SampleWindow {
  std::string patient_id;
  std::size_t j = 0;  // index of the last input reading within its segment
  std::vector<double> x;
  double y = 0.0;
  double t_last = 0.0;
};

struct PatientSplit {
  std::vector<std::string> all_ids;
  std::vector<std::string> train_ids;  // sorted
  std::uint64_t seed = 0;
  double fraction = 0.0;  // M in (0,100)
  bool clamped = false;   // M rounded to 0 or |all| and was pulled back

  bool is_train(const std::string& id) const;
};

/// Parse `patient_id,minutes,glucose_mgdl` CSV. Rows are grouped by patient
/// (patients sorted by id) and sorted by time; times are shifted so each
/// series starts at 0. Duplicate (patient, time) rows are dropped with a
/// diagnostic; non-numeric, negative or >1000 mg/dL readings are hard errors
/// naming the line. Empty input parses to an empty list.
std::vector<CgmSeries> parse_cgm_csv(std::istream& in,
                                     std::vector<std::string>* diagnostics = nullptr);

/// Inverse of parse_cgm_csv up to float formatting (%.17g round-trips).
void serialize_cgm_csv(std::span<const CgmSeries> series, std::ostream& out);

/// Maximal runs whose consecutive deltas are within nominal_step*(1 +- slack).
/// Degenerate input yields singleton segments; runs too short to window are
/// still emitted.
std::vector<CgmSeries> segment_contiguous(const CgmSeries& series,
                                          double nominal_step, double slack);

/// All windows (x_j, y_j) fully inside the segment: indices j = d-1 .. N-1-m,
/// count max(0, N - d - m + 1).
std::vector<SampleWindow> make_windows(const CgmSeries& segment, int d, int m);

/// Causal first-order Butterworth low-pass via the bilinear transform of
/// 1/(s/wc + 1) with pre-warp wc = tan(pi*cutoff/2), cutoff normalized to
/// Nyquist. Transfer (b0 + b1 z^-1)/(1 + a1 z^-1); the recursion is
/// y[i] = b0 x[i] + b1 x[i-1] - a1 y[i-1], state pre-charged to the first
/// sample so constants are fixed points. Times are preserved.
struct ButterworthCoeffs {
  double b0, b1, a1;
};
ButterworthCoeffs butterworth_coefficients(double cutoff);
CgmSeries butterworth_smooth(const CgmSeries& series, double cutoff);

/// Uniform draw without replacement of round-half-up(M/100 * |all|) patients,
/// clamped to [1, |all|-1]. Deterministic for a given seed.
PatientSplit split_patients(std::vector<std::string> all_ids, double train_percent,
                            std::uint64_t seed);

}  // namespace bgdeep
