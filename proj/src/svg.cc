// src/svg.cc

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

#include "rformant/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "rformant/error.h"
#include "rformant/fft.h"

namespace rformant {

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class Canvas {
 public:
  Canvas(double width, double height) : width_(width), height_(height) {}

  void rect(double x, double y, double w, double h, const std::string &fill,
            const std::string &stroke = "none") {
    out_ << "<rect x=\"" << fixed(x) << "\" y=\"" << fixed(y) << "\" width=\""
         << fixed(w) << "\" height=\"" << fixed(h) << "\" fill=\"" << fill
         << "\" stroke=\"" << stroke << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const std::string &stroke,
            double width = 1.0) {
    out_ << "<line x1=\"" << fixed(x1) << "\" y1=\"" << fixed(y1) << "\" x2=\""
         << fixed(x2) << "\" y2=\"" << fixed(y2) << "\" stroke=\"" << stroke
         << "\" stroke-width=\"" << fixed(width) << "\"/>\n";
  }
  void path(const std::string &d, const std::string &stroke, double width = 1.0) {
    out_ << "<path d=\"" << d << "\" fill=\"none\" stroke=\"" << stroke
         << "\" stroke-width=\"" << fixed(width) << "\"/>\n";
  }
  void text(double x, double y, const std::string &s, int size = 11,
            const std::string &anchor = "start") {
    out_ << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y)
         << "\" font-family=\"sans-serif\" font-size=\"" << size
         << "\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
  }
  std::string str() const {
    std::ostringstream doc;
    doc << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width_, 0)
        << "\" height=\"" << fixed(height_, 0) << "\" viewBox=\"0 0 "
        << fixed(width_, 0) << ' ' << fixed(height_, 0) << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << out_.str() << "</svg>\n";
    return doc.str();
  }

 private:
  double width_, height_;
  std::ostringstream out_;
};

// Plot area with linear data-to-pixel mapping.
struct Panel {
  double x, y, w, h;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  double px(double v) const { return x + (v - x0) / (x1 - x0) * w; }
  double py(double v) const { return y + h - (v - y0) / (y1 - y0) * h; }

  void frame(Canvas &c, const std::string &title, const std::string &xlabel) const {
    c.rect(x, y, w, h, "none", "#444");
    c.text(x, y - 6, title, 12);
    c.text(x + w / 2, y + h + 28, xlabel, 10, "middle");
    for (int i = 0; i <= 4; ++i) {
      double v = x0 + (x1 - x0) * i / 4.0;
      double xx = px(v);
      c.line(xx, y + h, xx, y + h + 4, "#444");
      c.text(xx, y + h + 15, fixed(v, 1), 9, "middle");
    }
  }
};

void set_y_range(Panel &p, double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1.0;
  p.y0 = lo;
  p.y1 = hi;
}

// Min/max trace per pixel column for long series.
void draw_trace(Canvas &c, const Panel &p, const std::vector<double> &v,
                double rate, const std::string &color) {
  if (v.empty()) return;
  const int columns = static_cast<int>(p.w);
  std::ostringstream d;
  if (static_cast<int>(v.size()) <= columns * 2) {
    for (size_t i = 0; i < v.size(); ++i)
      d << (i == 0 ? "M" : "L") << fixed(p.px(i / rate)) << ',' << fixed(p.py(v[i]));
  } else {
    const double per = static_cast<double>(v.size()) / columns;
    for (int col = 0; col < columns; ++col) {
      size_t a = static_cast<size_t>(col * per);
      size_t b = std::min(v.size(), static_cast<size_t>((col + 1) * per));
      if (a >= b) continue;
      auto [mn, mx] = std::minmax_element(v.begin() + static_cast<long>(a),
                                          v.begin() + static_cast<long>(b));
      double xx = p.px(a / rate);
      d << "M" << fixed(xx) << ',' << fixed(p.py(*mn)) << "L" << fixed(xx) << ','
        << fixed(p.py(*mx));
    }
  }
  c.path(d.str(), color, 0.8);
}

void draw_spectrum(Canvas &c, Panel p, const DomainAnalysis &d,
                   const std::string &title) {
  if (!d.present) {
    p.frame(c, title, "Hz");
    c.text(p.x + p.w / 2, p.y + p.h / 2, "absent: " + d.absent_reason, 11, "middle");
    return;
  }
  const auto &s = d.normalized;
  std::vector<double> disp = square_for_display(s);
  p.x0 = s.band->lo;
  p.x1 = s.band->hi;
  set_y_range(p, 0.0, *std::max_element(disp.begin(), disp.end()) * 1.05);
  p.frame(c, title, "Hz");
  for (double f : d.rhythm_bars) c.line(p.px(f), p.y, p.px(f), p.y + p.h, "#d62728", 1.0);
  std::ostringstream path;
  for (size_t k = 0; k < disp.size(); ++k)
    path << (k == 0 ? "M" : "L") << fixed(p.px(s.freqs[k])) << ',' << fixed(p.py(disp[k]));
  c.path(path.str(), "#1f77b4", 1.2);
}

void draw_histogram(Canvas &c, Panel p, const std::vector<double> &bins, Band band,
                    const std::string &title, bool with_frame = true) {
  const int n = static_cast<int>(bins.size());
  if (n == 0) return;
  p.x0 = band.lo;
  p.x1 = band.hi;
  double top = *std::max_element(bins.begin(), bins.end());
  set_y_range(p, 0.0, top > 0.0 ? top : 1.0);
  if (with_frame) p.frame(c, title, "Hz");
  const double width = (band.hi - band.lo) / n;
  for (int i = 0; i < n; ++i) {
    double lo = band.lo + i * width;
    double y = p.py(bins[static_cast<size_t>(i)]);
    c.rect(p.px(lo) + 0.5, y, std::max(0.0, p.px(lo + width) - p.px(lo) - 1.0),
           p.y + p.h - y, "#2ca02c");
  }
}

double db(double mag) { return 20.0 * std::log10(mag + 1e-9); }

}  // namespace

Spectrogram compute_spectrogram(const SignalBuffer &sig, double frame_ms,
                                double hop_ms) {
  if (!(frame_ms > 0.0) || !(hop_ms > 0.0)) throw Error("spectrogram: bad frame");
  const size_t frame = static_cast<size_t>(std::lround(frame_ms * sig.rate / 1000.0));
  const double hop = hop_ms * sig.rate / 1000.0;
  Spectrogram s;
  s.frame_rate = 1000.0 / hop_ms;
  s.bin_hz = sig.rate / static_cast<double>(frame);
  if (frame < 2 || sig.samples.size() < frame) return s;

  std::vector<double> window(frame), buf(frame);
  for (size_t i = 0; i < frame; ++i)
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (frame - 1));
  for (size_t t = 0;; ++t) {
    size_t start = static_cast<size_t>(std::lround(t * hop));
    if (start + frame > sig.samples.size()) break;
    for (size_t i = 0; i < frame; ++i) buf[i] = sig.samples[start + i] * window[i];
    std::vector<double> mag = real_fft_magnitude(buf);
    for (double &m : mag) m = db(m);
    s.frames.push_back(std::move(mag));
  }
  return s;
}

std::string render_clip_figure(const ClipAnalysis &clip, const AnalysisConfig &cfg) {
  const double W = 1000, H = 1040, pw = 420, ph = 170;
  const double left = 60, right = 560, top0 = 50, step = 245;
  Canvas c(W, H);
  c.text(W / 2, 24, "R-formant analysis: " + clip.signal.label, 15, "middle");

  const auto &x = clip.signal.samples;
  const double dur = clip.signal.duration();
  double amp = 0.0;
  for (double v : x) amp = std::max(amp, std::abs(v));
  if (!(amp > 0.0)) amp = 1.0;

  Panel wave{left, top0, pw, ph, 0.0, dur, -amp, amp};
  wave.frame(c, "Waveform", "s");
  draw_trace(c, wave, x, clip.signal.rate, "#555");

  draw_spectrum(c, Panel{right, top0, pw, ph}, clip.domain(Domain::kAms),
                "AMS (rectified signal)");

  Panel env{left, top0 + step, pw, ph, 0.0, dur, -amp, amp};
  env.frame(c, "Waveform with amplitude envelope", "s");
  draw_trace(c, env, x, clip.signal.rate, "#999");
  draw_trace(c, env, clip.envelope.values, clip.envelope.rate, "#d62728");

  draw_spectrum(c, Panel{right, top0 + step, pw, ph}, clip.domain(Domain::kAems),
                "AEMS (amplitude envelope)");

  Panel f0{left, top0 + 2 * step, pw, ph, 0.0, dur, 0.0, cfg.f0_max_hz};
  f0.frame(c, "F0 (AMDF), Hz", "s");
  {
    std::ostringstream dots;
    const auto &v = clip.f0_raw.values;
    for (size_t i = 0; i < v.size(); ++i) {
      if (!(v[i] > 0.0)) continue;
      double xx = f0.px(i / clip.f0_raw.rate), yy = f0.py(v[i]);
      dots << "M" << fixed(xx - 1) << ',' << fixed(yy) << "L" << fixed(xx + 1) << ','
           << fixed(yy);
    }
    c.path(dots.str(), "#1f77b4", 2.0);
  }

  draw_spectrum(c, Panel{right, top0 + 2 * step, pw, ph}, clip.domain(Domain::kFems),
                "FEMS (F0 contour)");

  Panel spec{left, top0 + 3 * step, pw, ph, 0.0, dur, 0.0, 1.0};
  Spectrogram sg = compute_spectrogram(clip.signal);
  if (!sg.frames.empty()) {
    const double max_hz = std::min(clip.signal.rate / 2.0, 5000.0);
    spec.y1 = max_hz;
    const size_t bins_used =
        std::min(sg.frames[0].size(), static_cast<size_t>(max_hz / sg.bin_hz) + 1);
    const size_t cols = std::min<size_t>(sg.frames.size(), 210);
    const size_t rows = std::min<size_t>(bins_used, 60);
    double hi = -1e300;
    for (const auto &f : sg.frames)
      for (size_t k = 0; k < bins_used; ++k) hi = std::max(hi, f[k]);
    const double lo = hi - 70.0;
    for (size_t ci = 0; ci < cols; ++ci) {
      size_t fa = ci * sg.frames.size() / cols, fb = (ci + 1) * sg.frames.size() / cols;
      for (size_t ri = 0; ri < rows; ++ri) {
        size_t ka = ri * bins_used / rows, kb = (ri + 1) * bins_used / rows;
        double v = -1e300;
        for (size_t f = fa; f < std::max(fb, fa + 1); ++f)
          for (size_t k = ka; k < std::max(kb, ka + 1); ++k) v = std::max(v, sg.frames[f][k]);
        double g = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
        int shade = static_cast<int>(std::lround(255.0 * (1.0 - g)));
        char color[16];
        std::snprintf(color, sizeof color, "#%02x%02x%02x", shade, shade, shade);
        double x0 = spec.x + spec.w * ci / cols, x1 = spec.x + spec.w * (ci + 1) / cols;
        double y1 = spec.y + spec.h - spec.h * ri / rows;
        double y0 = spec.y + spec.h - spec.h * (ri + 1) / rows;
        c.rect(x0, y0, x1 - x0 + 0.3, y1 - y0 + 0.3, color);
      }
    }
  }
  spec.frame(c, "Spectrogram (0-" + fixed(spec.y1, 0) + " Hz)", "s");

  const DomainAnalysis &ams = clip.domain(Domain::kAms);
  draw_histogram(c, Panel{right, top0 + 3 * step, pw, ph}, ams.profile.bins, cfg.band(),
                 "AMS R-formant bins (weighted)");
  return c.str();
}

std::string render_dendrogram(const Dendrogram &tree,
                              const std::map<std::string, std::vector<double>> &bins,
                              const std::string &title) {
  const size_t m = tree.leaves.size();
  const double row = 56, top = 50, tree_x = 40, tree_w = 420;
  const double H = top + row * static_cast<double>(m) + 40, W = 900;
  Canvas c(W, H);
  c.text(W / 2, 26, title, 15, "middle");
  if (m == 0) return c.str();

  const std::vector<size_t> order = tree.leaf_order();
  std::vector<double> ypos(m + tree.merges.size(), 0.0);
  for (size_t i = 0; i < order.size(); ++i)
    ypos[order[i]] = top + row * (static_cast<double>(i) + 0.5);

  double max_h = 0.0;
  for (const auto &mg : tree.merges) max_h = std::max(max_h, mg.distance);
  if (!(max_h > 0.0)) max_h = 1.0;
  // Height 0 at the leaves (right), root towards the left.
  auto hx = [&](double h) { return tree_x + tree_w * (1.0 - h / max_h); };

  for (size_t k = 0; k < tree.merges.size(); ++k) {
    const auto &mg = tree.merges[k];
    const size_t node = m + k;
    ypos[node] = 0.5 * (ypos[mg.left] + ypos[mg.right]);
    const double x = hx(mg.distance);
    c.line(x, ypos[mg.left], x, ypos[mg.right], "#333", 1.2);
    c.line(x, ypos[mg.left], hx(tree.height(mg.left)), ypos[mg.left], "#333", 1.2);
    c.line(x, ypos[mg.right], hx(tree.height(mg.right)), ypos[mg.right], "#333", 1.2);
  }
  for (int i = 0; i <= 4; ++i) {
    double h = max_h * i / 4.0;
    c.text(hx(h), H - 14, fixed(h, 2), 9, "middle");
  }

  for (size_t i = 0; i < order.size(); ++i) {
    const std::string &label = tree.leaves[order[i]];
    const double y = ypos[order[i]];
    c.text(tree_x + tree_w + 8, y + 4, label, 11);
    auto it = bins.find(label);
    if (it == bins.end() || it->second.empty()) continue;
    Panel hist{tree_x + tree_w + 150, y - row * 0.4, 280, row * 0.8};
    c.rect(hist.x, hist.y, hist.w, hist.h, "none", "#ccc");
    draw_histogram(c, hist, it->second, Band{0.0, static_cast<double>(it->second.size())},
                   "", false);
  }
  return c.str();
}

}  // namespace rformant
