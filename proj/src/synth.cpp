#include "wamark/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wamark/keystream.hpp"

namespace wamark {

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

double unit(SplitMix64& rng) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

double in_range(SplitMix64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit(rng);
}

// Affine map of a real field onto [24, 232]: keeps every generator safely
// inside [0,255] so embedding at large amplitudes cannot clip.
Image rescale(const RealField& field) {
  const auto [mn_it, mx_it] = std::minmax_element(field.values.begin(), field.values.end());
  const double mn = *mn_it;
  const double mx = *mx_it;
  const double span = (mx > mn) ? (mx - mn) : 1.0;
  Image out(field.size);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    out.pixels[i] = quantize_sample(24.0 + 208.0 * (field.values[i] - mn) / span);
  }
  return out;
}

// 1D Gaussian wrapped onto the N-cycle (translates beyond +-1 are below
// quantization for sigma <= N/3). The product of two of these is an exactly
// periodic bump, so its spectrum stays a sampled Gaussian with no seam leak.
std::vector<double> periodic_profile(int N, double center, double sigma) {
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) {
    double v = 0.0;
    for (int d = -1; d <= 1; ++d) {
      const double t = i + d * N - center;
      v += std::exp(-t * t / (2.0 * sigma * sigma));
    }
    out[i] = v;
  }
  return out;
}

Image make_gradient(int N, SplitMix64& rng) {
  const double p1 = in_range(rng, 0.0, kTau);
  const double p2 = in_range(rng, 0.0, kTau);
  const double av = in_range(rng, 6.0, 12.0);
  Image out(N);
  for (int y = 0; y < N; ++y) {
    for (int x = 0; x < N; ++x) {
      const double v =
          128.0 + 90.0 * std::cos(kTau * x / N + p1) + av * std::cos(kTau * y / N + p2);
      out.at(y, x) = quantize_sample(v);
    }
  }
  return out;
}

Image make_radial(int N, SplitMix64& rng) {
  const double cx = N / 2.0 + in_range(rng, -N / 16.0, N / 16.0);
  const double cy = N / 2.0 + in_range(rng, -N / 16.0, N / 16.0);
  const double sigma = N / 3.0;
  const std::vector<double> px = periodic_profile(N, cx, sigma);
  const std::vector<double> py = periodic_profile(N, cy, sigma);
  Image out(N);
  for (int y = 0; y < N; ++y) {
    for (int x = 0; x < N; ++x) {
      out.at(y, x) = quantize_sample(40.0 + 180.0 * py[y] * px[x]);
    }
  }
  return out;
}

Image make_checker(int N, SplitMix64& rng) {
  // Cell size 1: all checker energy sits exactly at the Nyquist corner.
  const double p1 = in_range(rng, 0.0, kTau);
  const double p2 = in_range(rng, 0.0, kTau);
  Image out(N);
  for (int y = 0; y < N; ++y) {
    for (int x = 0; x < N; ++x) {
      const double base = ((x + y) & 1) ? 196.0 : 60.0;
      const double tilt = 20.0 * std::cos(kTau * x / N + p1) * std::cos(kTau * y / N + p2);
      out.at(y, x) = quantize_sample(base + tilt);
    }
  }
  return out;
}

Image make_noise(int N, SplitMix64& rng) {
  // Sum of keyed cosines with |k|inf <= 24, below the carrier band's reach.
  constexpr int kWaves = 40;
  constexpr int kMaxFreq = 24;
  struct Wave {
    double k1, k2, amp, phase;
  };
  std::vector<Wave> waves;
  waves.reserve(kWaves);
  while (waves.size() < kWaves) {
    const double k1 = static_cast<double>(rng.uniform_below(2 * kMaxFreq + 1)) - kMaxFreq;
    const double k2 = static_cast<double>(rng.uniform_below(2 * kMaxFreq + 1)) - kMaxFreq;
    if (k1 == 0.0 && k2 == 0.0) continue;
    waves.push_back({k1, k2, in_range(rng, 4.0, 12.0), in_range(rng, 0.0, kTau)});
  }
  RealField field(N);
  for (int y = 0; y < N; ++y) {
    for (int x = 0; x < N; ++x) {
      double v = 0.0;
      for (const Wave& w : waves) v += w.amp * std::cos(kTau * (w.k1 * x + w.k2 * y) / N + w.phase);
      field.at(y, x) = v;
    }
  }
  return rescale(field);
}

Image make_phantom(int N, SplitMix64& rng) {
  struct Blob {
    double cx, cy, sigma, amp;
  };
  std::vector<Blob> blobs;
  for (int i = 0; i < 6; ++i) {
    Blob b;
    b.cx = in_range(rng, 0.15 * N, 0.85 * N);
    b.cy = in_range(rng, 0.15 * N, 0.85 * N);
    b.sigma = in_range(rng, N / 16.0, N / 6.0);
    b.amp = in_range(rng, 40.0, 80.0) * (rng.next() >> 63 ? -1.0 : 1.0);
    blobs.push_back(b);
  }
  struct Ripple {
    double k1, k2, amp, phase;
  };
  std::vector<Ripple> ripples;
  for (int i = 0; i < 2; ++i) {
    Ripple r;
    r.k1 = static_cast<double>(rng.uniform_below(7)) - 3.0;
    r.k2 = static_cast<double>(rng.uniform_below(7)) - 3.0;
    r.amp = in_range(rng, 8.0, 16.0);
    r.phase = in_range(rng, 0.0, kTau);
    ripples.push_back(r);
  }
  std::vector<std::vector<double>> px, py;
  for (const Blob& b : blobs) {
    px.push_back(periodic_profile(N, b.cx, b.sigma));
    py.push_back(periodic_profile(N, b.cy, b.sigma));
  }
  RealField field(N);
  for (int y = 0; y < N; ++y) {
    for (int x = 0; x < N; ++x) {
      double v = 128.0;
      for (std::size_t i = 0; i < blobs.size(); ++i) v += blobs[i].amp * py[i][y] * px[i][x];
      for (const Ripple& r : ripples) {
        v += r.amp * std::cos(kTau * (r.k1 * x + r.k2 * y) / N + r.phase);
      }
      field.at(y, x) = v;
    }
  }
  return rescale(field);
}

}  // namespace

SynthKind parse_synth_kind(const std::string& name) {
  if (name == "gradient") return SynthKind::gradient;
  if (name == "radial") return SynthKind::radial;
  if (name == "checker") return SynthKind::checker;
  if (name == "noise") return SynthKind::noise;
  if (name == "phantom") return SynthKind::phantom;
  throw DataError("unknown synthetic kind: '" + name + "'");
}

const char* synth_kind_name(SynthKind kind) {
  switch (kind) {
    case SynthKind::gradient:
      return "gradient";
    case SynthKind::radial:
      return "radial";
    case SynthKind::checker:
      return "checker";
    case SynthKind::noise:
      return "noise";
    case SynthKind::phantom:
      return "phantom";
  }
  throw InternalError("unhandled synthetic kind");
}

const std::vector<SynthKind>& all_synth_kinds() {
  static const std::vector<SynthKind> kinds = {SynthKind::gradient, SynthKind::radial,
                                               SynthKind::checker, SynthKind::noise,
                                               SynthKind::phantom};
  return kinds;
}

Image synth_image(SynthKind kind, int size, std::uint64_t seed) {
  require_valid_size(size);
  SplitMix64 rng(seed);
  switch (kind) {
    case SynthKind::gradient:
      return make_gradient(size, rng);
    case SynthKind::radial:
      return make_radial(size, rng);
    case SynthKind::checker:
      return make_checker(size, rng);
    case SynthKind::noise:
      return make_noise(size, rng);
    case SynthKind::phantom:
      return make_phantom(size, rng);
  }
  throw InternalError("unhandled synthetic kind");
}

}  // namespace wamark
