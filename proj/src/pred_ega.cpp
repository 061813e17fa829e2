#include "bgdeep/pred_ega.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace bgdeep {

const char* to_string(GlycemicRange r) {
  switch (r) {
    case GlycemicRange::hypo: return "hypo";
    case GlycemicRange::eu: return "eu";
    case GlycemicRange::hyper: return "hyper";
  }
  return "?";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::accurate: return "accurate";
    case Verdict::benign: return "benign";
    case Verdict::error: return "error";
  }
  return "?";
}

GlycemicRange glycemic_range(double reference) {
  if (reference <= 70.0) return GlycemicRange::hypo;
  if (reference <= 180.0) return GlycemicRange::eu;
  return GlycemicRange::hyper;
}

std::optional<double> central_rate(std::span<const double> values,
                                   std::span<const double> times, std::size_t j,
                                   double denominator_factor) {
  if (j == 0 || j + 1 >= values.size()) return std::nullopt;
  return (values[j + 1] - values[j - 1]) /
         (denominator_factor * (times[j + 1] - times[j - 1]));
}

PointZone classify_point(double predicted, double reference, const ZoneTables& tables) {
  const PointZoneParams& p = tables.point;
  const double lo = p.hypo;
  const double hi = p.hyper;

  if (std::abs(predicted - reference) <= p.rel_tol * reference ||
      (predicted <= lo && reference <= lo)) {
    return PointZone::A;
  }
  if ((reference <= lo && predicted > hi) || (reference > hi && predicted <= lo)) {
    return PointZone::E;
  }
  // overcorrection deep across the euglycemic band
  if ((reference <= lo && predicted > lo + p.overshoot && predicted <= hi) ||
      (reference > hi && predicted >= lo && predicted < hi - p.overshoot)) {
    return PointZone::C;
  }
  // missed detection: reference flags hypo/hyper and the prediction does not,
  // or the reference is euglycemic and the prediction raises a false flag
  if ((reference > lo && reference <= hi && (predicted <= lo || predicted > hi)) ||
      (reference <= lo && predicted > lo && predicted <= lo + p.overshoot) ||
      (reference > hi && predicted >= hi - p.overshoot && predicted <= hi)) {
    return PointZone::D;
  }
  return PointZone::B;
}

RateZone classify_rate(double predicted_rate, double reference_rate,
                       const ZoneTables& tables) {
  const RateZoneParams& r = tables.rate;
  const double diff = std::abs(predicted_rate - reference_rate);
  if (diff <= r.accurate) return RateZone::A;
  if (diff <= r.benign) return RateZone::B;
  if (predicted_rate * reference_rate < 0.0 &&
      std::abs(predicted_rate) > r.significant &&
      std::abs(reference_rate) > r.significant) {
    return RateZone::E;
  }
  if (std::abs(reference_rate) > r.significant &&
      std::abs(predicted_rate) <= r.significant * (1.0 - r.missed_fraction)) {
    return RateZone::D;
  }
  return RateZone::C;
}

Verdict combine(PointZone point, RateZone rate, GlycemicRange range,
                const ZoneTables& tables) {
  return tables.combination[static_cast<int>(range)][static_cast<int>(point)]
                           [static_cast<int>(rate)];
}

Verdict endpoint_verdict(PointZone point) {
  switch (point) {
    case PointZone::A:
    case PointZone::B: return Verdict::accurate;
    case PointZone::C: return Verdict::benign;
    default: return Verdict::error;
  }
}

ZoneTables ZoneTables::defaults() {
  ZoneTables t;
  for (int range = 0; range < 3; ++range) {
    for (int point = 0; point < 5; ++point) {
      for (int rate = 0; rate < 5; ++rate) {
        const bool point_ok = point <= static_cast<int>(PointZone::B);
        const bool rate_ok = rate <= static_cast<int>(RateZone::B);
        const bool point_bad = point >= static_cast<int>(PointZone::D) ||
                               (range == static_cast<int>(GlycemicRange::hypo) &&
                                point == static_cast<int>(PointZone::C));
        const bool rate_bad = rate >= static_cast<int>(RateZone::D);
        Verdict v;
        if (point_ok && rate_ok) {
          v = Verdict::accurate;
        } else if (point_bad || rate_bad) {
          v = Verdict::error;
        } else {
          v = Verdict::benign;
        }
        t.combination[range][point][rate] = v;
      }
    }
  }
  return t;
}

namespace {

constexpr const char* kRangeKeys[3] = {"hypo", "eu", "hyper"};

Verdict verdict_from_string(const std::string& s) {
  if (s == "accurate") return Verdict::accurate;
  if (s == "benign") return Verdict::benign;
  if (s == "error") return Verdict::error;
  throw std::runtime_error("zone tables: unknown verdict '" + s + "'");
}

}  // namespace

ZoneTables ZoneTables::load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("zone tables: cannot open " + path);
  nlohmann::json j;
  in >> j;

  ZoneTables t = defaults();
  if (j.contains("point_zones")) {
    const auto& p = j["point_zones"];
    t.point.hypo = p.value("hypo", t.point.hypo);
    t.point.hyper = p.value("hyper", t.point.hyper);
    t.point.rel_tol = p.value("rel_tol", t.point.rel_tol);
    t.point.overshoot = p.value("overshoot", t.point.overshoot);
  }
  if (j.contains("rate_zones")) {
    const auto& r = j["rate_zones"];
    t.rate.accurate = r.value("accurate", t.rate.accurate);
    t.rate.benign = r.value("benign", t.rate.benign);
    t.rate.significant = r.value("significant", t.rate.significant);
    t.rate.missed_fraction = r.value("missed_fraction", t.rate.missed_fraction);
  }
  if (j.contains("combination")) {
    const auto& c = j["combination"];
    for (int range = 0; range < 3; ++range) {
      const auto& rows = c.at(kRangeKeys[range]);
      if (rows.size() != 5) throw std::runtime_error("zone tables: combination needs 5 rows");
      for (int point = 0; point < 5; ++point) {
        if (rows[point].size() != 5) {
          throw std::runtime_error("zone tables: combination rows need 5 entries");
        }
        for (int rate = 0; rate < 5; ++rate) {
          t.combination[range][point][rate] =
              verdict_from_string(rows[point][rate].get<std::string>());
        }
      }
    }
  }
  return t;
}

std::string ZoneTables::to_json() const {
  nlohmann::json j;
  j["version"] = 1;
  j["point_zones"] = {{"hypo", point.hypo},
                      {"hyper", point.hyper},
                      {"rel_tol", point.rel_tol},
                      {"overshoot", point.overshoot}};
  j["rate_zones"] = {{"accurate", rate.accurate},
                     {"benign", rate.benign},
                     {"significant", rate.significant},
                     {"missed_fraction", rate.missed_fraction}};
  for (int range = 0; range < 3; ++range) {
    nlohmann::json rows = nlohmann::json::array();
    for (int point = 0; point < 5; ++point) {
      nlohmann::json row = nlohmann::json::array();
      for (int rate = 0; rate < 5; ++rate) {
        row.push_back(to_string(combination[range][point][rate]));
      }
      rows.push_back(row);
    }
    j["combination"][kRangeKeys[range]] = rows;
  }
  return j.dump(2) + "\n";
}

PredEgaReport& PredEgaReport::operator+=(const PredEgaReport& other) {
  for (int r = 0; r < 3; ++r) {
    for (int v = 0; v < 3; ++v) counts[r][v] += other.counts[r][v];
  }
  return *this;
}

std::uint64_t PredEgaReport::total(GlycemicRange range) const {
  const auto& row = counts[static_cast<int>(range)];
  return row[0] + row[1] + row[2];
}

double PredEgaReport::percent(GlycemicRange range, Verdict verdict) const {
  const std::uint64_t n = total(range);
  if (n == 0) return 0.0;
  return 100.0 * static_cast<double>(counts[static_cast<int>(range)][static_cast<int>(verdict)]) /
         static_cast<double>(n);
}

PredEgaReport score_sequence(std::span<const double> predicted,
                             std::span<const double> reference,
                             std::span<const double> times,
                             const ZoneTables& tables,
                             double denominator_factor) {
  const std::size_t n = predicted.size();
  if (reference.size() != n || times.size() != n) {
    throw std::invalid_argument("score_sequence: length mismatch");
  }
  PredEgaReport report;
  for (std::size_t i = 0; i < n; ++i) {
    const GlycemicRange range = glycemic_range(reference[i]);
    const PointZone pz = classify_point(predicted[i], reference[i], tables);
    Verdict verdict;
    const auto pred_rate = central_rate(predicted, times, i, denominator_factor);
    const auto ref_rate = central_rate(reference, times, i, denominator_factor);
    if (pred_rate && ref_rate) {
      verdict = combine(pz, classify_rate(*pred_rate, *ref_rate, tables), range, tables);
    } else {
      verdict = endpoint_verdict(pz);
    }
    ++report.counts[static_cast<int>(range)][static_cast<int>(verdict)];
  }
  return report;
}

}  // namespace bgdeep
