// src/lts.cc

// Copyright 2026  The rformant Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "rformant/lts.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rformant/error.h"
#include "rformant/fft.h"

namespace rformant {

std::string_view domain_name(Domain d) {
  switch (d) {
    case Domain::kAms: return "AMS";
    case Domain::kAems: return "AEMS";
    case Domain::kFems: return "FEMS";
  }
  return "?";
}

std::string_view domain_key(Domain d) {
  switch (d) {
    case Domain::kAms: return "ams";
    case Domain::kAems: return "aems";
    case Domain::kFems: return "fems";
  }
  return "?";
}

Domain parse_domain(std::string_view name) {
  for (Domain d : {Domain::kAms, Domain::kAems, Domain::kFems})
    if (name == domain_name(d) || name == domain_key(d)) return d;
  throw Error("unknown domain '" + std::string(name) + "'");
}

LongTermSpectrum long_term_spectrum(std::span<const double> series, double rate,
                                    Domain domain, std::string label) {
  if (series.empty()) throw Error("long_term_spectrum: empty series");
  if (!(rate > 0.0)) throw Error("long_term_spectrum: invalid rate");
  const size_t n = series.size();
  const double duration = static_cast<double>(n) / rate;
  if (duration < kMinLtsSeconds - 1e-9)
    throw Error("long_term_spectrum: series shorter than 1 s");

  const double mean = std::accumulate(series.begin(), series.end(), 0.0) /
                      static_cast<double>(n);
  std::vector<double> centred(series.begin(), series.end());
  for (double &x : centred) x -= mean;

  LongTermSpectrum spec;
  spec.domain = domain;
  spec.label = std::move(label);
  spec.duration = duration;
  spec.delta_f = 1.0 / duration;
  spec.magnitude = real_fft_magnitude(centred);
  spec.freqs.resize(spec.magnitude.size());
  for (size_t k = 0; k < spec.freqs.size(); ++k)
    spec.freqs[k] = static_cast<double>(k) * rate / static_cast<double>(n);
  return spec;
}

LongTermSpectrum long_term_spectrum(const SignalBuffer &sig, Domain domain) {
  return long_term_spectrum(sig.samples, sig.rate, domain, sig.label);
}

LongTermSpectrum long_term_spectrum(const Track &track, Domain domain,
                                    std::string label) {
  return long_term_spectrum(track.values, track.rate, domain, std::move(label));
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error("fit_line: need two or more paired points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error("fit_line: x has zero variance");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

std::vector<double> detrend_linear(std::span<const double> x,
                                   std::span<const double> y) {
  // Centring x before the fit keeps the residual mean at rounding level.
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  LineFit fit = fit_line(x, y);
  std::vector<double> r(y.size());
  for (size_t i = 0; i < y.size(); ++i)
    r[i] = (y[i] - my) - fit.slope * (x[i] - mx);
  return r;
}

LongTermSpectrum normalize_log_detrend(const LongTermSpectrum &spec, Band band) {
  if (!(band.lo < band.hi)) throw Error("normalize: band needs lo < hi");
  if (spec.freqs.empty()) throw Error("normalize: empty spectrum");
  const double tol = 1e-6 * spec.delta_f;
  if (band.lo < spec.freqs.front() - tol || band.hi > spec.freqs.back() + tol)
    throw Error("normalize: band outside the spectrum's frequency range");

  LongTermSpectrum out;
  out.domain = spec.domain;
  out.label = spec.label;
  out.delta_f = spec.delta_f;
  out.duration = spec.duration;
  out.band = band;
  for (size_t k = 0; k < spec.freqs.size(); ++k) {
    double f = spec.freqs[k];
    if (f >= band.lo - tol && f <= band.hi + tol) {
      out.freqs.push_back(f);
      out.magnitude.push_back(spec.magnitude[k]);
    }
  }
  if (out.freqs.size() < 3)
    throw Error("normalize: fewer than 3 frequency samples in band");

  std::vector<double> log_mag(out.magnitude.size());
  for (size_t k = 0; k < log_mag.size(); ++k)
    log_mag[k] = std::log10(out.magnitude[k] + kLogFloor);
  out.residual = detrend_linear(out.freqs, log_mag);
  return out;
}

std::vector<double> square_for_display(const LongTermSpectrum &spec) {
  if (!spec.has_residual()) throw Error("square_for_display: no residual");
  const double lo = *std::min_element(spec.residual.begin(), spec.residual.end());
  std::vector<double> out(spec.residual.size());
  for (size_t k = 0; k < out.size(); ++k) {
    double d = spec.residual[k] - lo;
    out[k] = d * d;
  }
  return out;
}

}  // namespace rformant
