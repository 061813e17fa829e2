#include "bgdeep/cgm_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "bgdeep/rng.hpp"

namespace bgdeep {

bool PatientSplit::is_train(const std::string& id) const {
  return std::binary_search(train_ids.begin(), train_ids.end(), id);
}

namespace {

constexpr const char* kHeader = "patient_id,minutes,glucose_mgdl";

double parse_number(std::string_view field, std::size_t line, const char* what) {
  double value = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::runtime_error("non-numeric " + std::string(what) + ", line " +
                             std::to_string(line));
  }
  return value;
}

struct RawRow {
  double minutes;
  double glucose;
  std::size_t line;
};

}  // namespace

std::vector<CgmSeries> parse_cgm_csv(std::istream& in,
                                     std::vector<std::string>* diagnostics) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::vector<RawRow>> by_patient;

  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!have_header) {
      if (line != kHeader) {
        throw std::runtime_error("bad CSV header, expected '" + std::string(kHeader) +
                                 "', line " + std::to_string(line_no));
      }
      have_header = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos ||
        line.find(',', c2 + 1) != std::string::npos) {
      throw std::runtime_error("expected 3 fields, line " + std::to_string(line_no));
    }
    std::string id = line.substr(0, c1);
    if (id.empty()) throw std::runtime_error("empty patient_id, line " + std::to_string(line_no));
    const double minutes =
        parse_number(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), line_no, "minutes");
    const double glucose =
        parse_number(std::string_view(line).substr(c2 + 1), line_no, "glucose");
    if (glucose < 0.0) {
      throw std::runtime_error("negative glucose, line " + std::to_string(line_no));
    }
    if (glucose > 1000.0) {
      throw std::runtime_error("glucose above 1000 mg/dL, line " + std::to_string(line_no));
    }
    by_patient[id].push_back(RawRow{minutes, glucose, line_no});
  }

  std::vector<CgmSeries> out;
  out.reserve(by_patient.size());
  for (auto& [id, rows] : by_patient) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const RawRow& a, const RawRow& b) { return a.minutes < b.minutes; });
    CgmSeries s;
    s.patient_id = id;
    s.times.reserve(rows.size());
    s.values.reserve(rows.size());
    for (const RawRow& r : rows) {
      if (!s.times.empty() && r.minutes == s.times.back()) {
        if (diagnostics) {
          diagnostics->push_back("duplicate time " + std::to_string(r.minutes) +
                                 " for patient " + id + ", dropped row at line " +
                                 std::to_string(r.line));
        }
        continue;
      }
      s.times.push_back(r.minutes);
      s.values.push_back(r.glucose);
    }
    const double t0 = s.times.front();
    for (double& t : s.times) t -= t0;
    out.push_back(std::move(s));
  }
  return out;
}

void serialize_cgm_csv(std::span<const CgmSeries> series, std::ostream& out) {
  out << kHeader << '\n';
  char buf[64];
  for (const CgmSeries& s : series) {
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", s.times[i], s.values[i]);
      out << s.patient_id << ',' << buf << '\n';
    }
  }
}

std::vector<CgmSeries> segment_contiguous(const CgmSeries& series,
                                          double nominal_step, double slack) {
  if (nominal_step <= 0.0) throw std::invalid_argument("segment_contiguous: step must be > 0");
  const double lo = nominal_step * (1.0 - slack);
  const double hi = nominal_step * (1.0 + slack);

  std::vector<CgmSeries> segments;
  std::size_t start = 0;
  const std::size_t n = series.times.size();
  for (std::size_t i = 1; i <= n; ++i) {
    const bool breaks = i == n || series.times[i] - series.times[i - 1] < lo ||
                        series.times[i] - series.times[i - 1] > hi;
    if (!breaks) continue;
    CgmSeries seg;
    seg.patient_id = series.patient_id;
    seg.times.assign(series.times.begin() + start, series.times.begin() + i);
    seg.values.assign(series.values.begin() + start, series.values.begin() + i);
    segments.push_back(std::move(seg));
    start = i;
  }
  return segments;
}

std::vector<SampleWindow> make_windows(const CgmSeries& segment, int d, int m) {
  if (d < 2) throw std::invalid_argument("make_windows: d must be >= 2");
  if (m < 1) throw std::invalid_argument("make_windows: m must be >= 1");
  std::vector<SampleWindow> windows;
  const std::size_t n = segment.times.size();
  if (n < static_cast<std::size_t>(d + m)) return windows;
  windows.reserve(n - d - m + 1);
  for (std::size_t j = static_cast<std::size_t>(d) - 1; j + m < n; ++j) {
    SampleWindow w;
    w.patient_id = segment.patient_id;
    w.j = j;
    w.x.assign(segment.values.begin() + (j - d + 1), segment.values.begin() + j + 1);
    w.y = segment.values[j + m];
    w.t_last = segment.times[j];
    windows.push_back(std::move(w));
  }
  return windows;
}

ButterworthCoeffs butterworth_coefficients(double cutoff) {
  if (!(cutoff > 0.0 && cutoff < 1.0)) {
    throw std::invalid_argument("butterworth: cutoff must be in (0,1)");
  }
  const double wc = std::tan(3.14159265358979323846 * cutoff / 2.0);
  return ButterworthCoeffs{wc / (1.0 + wc), wc / (1.0 + wc), (wc - 1.0) / (1.0 + wc)};
}

CgmSeries butterworth_smooth(const CgmSeries& series, double cutoff) {
  const ButterworthCoeffs c = butterworth_coefficients(cutoff);
  CgmSeries out;
  out.patient_id = series.patient_id;
  out.times = series.times;
  out.values.resize(series.values.size());
  if (series.values.empty()) return out;
  double x_prev = series.values.front();
  double y_prev = series.values.front();
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const double x = series.values[i];
    const double y = c.b0 * x + c.b1 * x_prev - c.a1 * y_prev;
    out.values[i] = y;
    x_prev = x;
    y_prev = y;
  }
  return out;
}

PatientSplit split_patients(std::vector<std::string> all_ids, double train_percent,
                            std::uint64_t seed) {
  if (all_ids.size() < 2) {
    throw std::invalid_argument("split_patients: need at least 2 patients");
  }
  if (!(train_percent > 0.0 && train_percent < 100.0)) {
    throw std::invalid_argument("split_patients: train_percent must be in (0,100)");
  }
  std::sort(all_ids.begin(), all_ids.end());
  const std::size_t n = all_ids.size();
  // round half up
  std::size_t count = static_cast<std::size_t>(
      std::floor(train_percent / 100.0 * static_cast<double>(n) + 0.5));
  bool clamped = false;
  if (count < 1) {
    count = 1;
    clamped = true;
  }
  if (count >= n) {
    count = n - 1;
    clamped = true;
  }

  std::vector<std::string> pool = all_ids;
  Rng rng(seed);
  rng.shuffle(pool);

  PatientSplit split;
  split.all_ids = std::move(all_ids);
  split.train_ids.assign(pool.begin(), pool.begin() + count);
  std::sort(split.train_ids.begin(), split.train_ids.end());
  split.seed = seed;
  split.fraction = train_percent;
  split.clamped = clamped;
  return split;
}

}  // namespace bgdeep
