#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace bgdeep {

enum class GlycemicRange { hypo = 0, eu = 1, hyper = 2 };
enum class PointZone { A = 0, B, C, D, E };
enum class RateZone { A = 0, B, C, D, E };

/// Ordered worst-to-best so that numeric comparison means "clinically better".
enum class Verdict { error = 0, benign = 1, accurate = 2 };

const char* to_string(GlycemicRange r);
const char* to_string(Verdict v);

struct PointZoneParams {
  double hypo = 70.0;       // range boundary, closed upper bound
  double hyper = 180.0;     // exclusive lower bound of hyperglycemia
  double rel_tol = 0.2;     // zone A relative error
  double overshoot = 40.0;  // separates missed detection (D) from overcorrection (C)
};

struct RateZoneParams {
  double accurate = 1.0;        // |dpred - dref| for zone A, mg/dL per minute
  double benign = 2.0;          // zone B bound
  double significant = 1.0;     // a movement that matters clinically
  double missed_fraction = 0.5; // zone D: |pred rate| <= significant*(1-fraction)
};

/// Boundary parameters plus the (range x point x rate) -> verdict matrix.
/// Shipped as data (data/pred_ega_zones.json mirrors defaults()); every
/// boundary is overridable through the JSON file.
struct ZoneTables {
  PointZoneParams point;
  RateZoneParams rate;
  std::array<std::array<std::array<Verdict, 5>, 5>, 3> combination{};  // [range][point][rate]

  static ZoneTables defaults();
  static ZoneTables load_json(const std::string& path);
  std::string to_json() const;
};

/// hypo if <= 70, eu if <= 180, hyper above.
GlycemicRange glycemic_range(double reference);

/// (v[j+1] - v[j-1]) / (factor * (t[j+1] - t[j-1])); nullopt at the ends.
/// factor = 2 reproduces the printed formula (twice the usual denominator);
/// both compared series use the same formula, so verdicts are unaffected,
/// but absolute thresholds assume this convention.
std::optional<double> central_rate(std::span<const double> values,
                                   std::span<const double> times, std::size_t j,
                                   double denominator_factor = 2.0);

PointZone classify_point(double predicted, double reference, const ZoneTables& tables);
RateZone classify_rate(double predicted_rate, double reference_rate,
                       const ZoneTables& tables);
Verdict combine(PointZone point, RateZone rate, GlycemicRange range,
                const ZoneTables& tables);

/// Verdict when no rate is available (segment endpoints): point zone alone.
Verdict endpoint_verdict(PointZone point);

struct PredEgaReport {
  // counts[range][verdict]
  std::array<std::array<std::uint64_t, 3>, 3> counts{};

  PredEgaReport& operator+=(const PredEgaReport& other);
  std::uint64_t total(GlycemicRange range) const;
  /// 100 * count / total, 0 when the range is empty.
  double percent(GlycemicRange range, Verdict verdict) const;
};

/// Score one contiguous segment: interior points combine point and rate
/// zones, endpoints use the point zone alone, ranges come from the reference
/// value. Concatenating reports of disjoint segments is exact (counts add).
PredEgaReport score_sequence(std::span<const double> predicted,
                             std::span<const double> reference,
                             std::span<const double> times,
                             const ZoneTables& tables,
                             double denominator_factor = 2.0);

}  // namespace bgdeep
