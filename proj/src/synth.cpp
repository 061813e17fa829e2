#include "bgdeep/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "bgdeep/rng.hpp"

namespace bgdeep {

SynthProfile synth_profile(const std::string& name) {
  if (name == "noiseless") return SynthProfile{name, 0.0};
  if (name == "noisy") return SynthProfile{name, 5.0};
  throw std::invalid_argument("unknown synth profile '" + name + "'");
}

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Smooth plateau: rises over tau_r around t0, decays over tau_f after t0+dur.
double excursion(double t, double t0, double dur, double tau_r, double tau_f) {
  return logistic((t - t0) / tau_r) * logistic(-(t - t0 - dur) / tau_f);
}

}  // namespace

std::vector<CgmSeries> synth_generate(int n_patients, int n_points,
                                      std::uint64_t seed, const SynthProfile& profile) {
  if (n_patients < 1 || n_points < 2) {
    throw std::invalid_argument("synth_generate: need >= 1 patient and >= 2 points");
  }
  constexpr double kStep = 5.0;  // minutes
  const double span = kStep * (n_points - 1);

  std::vector<CgmSeries> out;
  out.reserve(static_cast<std::size_t>(n_patients));
  for (int p = 0; p < n_patients; ++p) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(p)));

    const double baseline = 112.0 + 16.0 * rng.next_unit();
    const int n_meals = 2 + static_cast<int>(rng.next_below(2));

    struct Meal {
      double t0, amp, dur, tau_r, tau_f;
    };
    std::vector<Meal> meals;
    for (int i = 0; i < n_meals; ++i) {
      Meal m;
      // stratified start times so excursions do not pile up
      m.t0 = span * ((i + 0.15 + 0.6 * rng.next_unit()) / n_meals);
      m.amp = 95.0 + 120.0 * rng.next_unit();
      m.dur = 30.0 + 30.0 * rng.next_unit();
      m.tau_r = 8.0 + 7.0 * rng.next_unit();
      m.tau_f = 25.0 + 20.0 * rng.next_unit();
      meals.push_back(m);
    }

    // one prolonged dip whose floor lands in the 52-68 mg/dL band
    const double dip_floor = 52.0 + 16.0 * rng.next_unit();
    const double dip_depth = baseline - dip_floor;
    const double dip_t0 = span * (0.55 + 0.3 * rng.next_unit());
    const double dip_dur = 60.0 + 60.0 * rng.next_unit();
    const double dip_tau = 12.0 + 8.0 * rng.next_unit();

    CgmSeries s;
    char id[16];
    std::snprintf(id, sizeof(id), "p%03d", p + 1);
    s.patient_id = id;
    s.times.resize(static_cast<std::size_t>(n_points));
    s.values.resize(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
      const double t = kStep * i;
      double v = baseline;
      for (const Meal& m : meals) v += m.amp * excursion(t, m.t0, m.dur, m.tau_r, m.tau_f);
      v -= dip_depth * excursion(t, dip_t0, dip_dur, dip_tau, dip_tau);
      if (profile.noise_sigma > 0.0) v += profile.noise_sigma * rng.next_normal();
      s.times[static_cast<std::size_t>(i)] = t;
      s.values[static_cast<std::size_t>(i)] = std::clamp(v, 40.0, 450.0);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace bgdeep
