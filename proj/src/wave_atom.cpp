#include "wamark/wave_atom.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>

namespace wamark {

namespace {

constexpr double kPi = std::numbers::pi;

int log2_exact(int n) {
  int l = 0;
  while ((1 << l) < n) ++l;
  return l;
}

// One scale of the 1D frequency tiling: bands [B*m, B*(m+1)) for m in
// [0, m_hi); in 2D only pairs with max(m1, m2) >= m_lo belong to the scale.
struct ScaleSpec {
  int scale;
  int band_width;  // B = 2^(scale-1)
  int m_lo;
  int m_hi;
};

struct Tiling {
  int size;        // N
  int half;        // N/2, the Nyquist index
  int num_scales;  // J
  std::vector<ScaleSpec> scales;
};

Tiling make_tiling(int N) {
  Tiling t;
  t.size = N;
  t.half = N / 2;
  const int L = log2_exact(N);
  t.num_scales = (L + 1) / 2;
  for (int j = 1; j <= t.num_scales; ++j) {
    const int B = 1 << (j - 1);
    const int m_hi = std::min(1 << j, t.half / B);
    const int m_lo = (j == 1) ? 0 : 1 << (j - 2);
    t.scales.push_back({j, B, m_lo, m_hi});
  }
  return t;
}

// Smooth power-complementary ramp: ramp(u)^2 + ramp(1-u)^2 == 1.
double ramp(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double b = u * u * u * u * (35.0 - 84.0 * u + 70.0 * u * u - 20.0 * u * u * u);
  return std::sin(0.5 * kPi * b);
}

// Half-width of the transition ramp centred on tile edge k0: half the width
// of the narrowest band whose grid contains k0 within its covered range.
double edge_halfwidth(const Tiling& t, int k0) {
  for (const ScaleSpec& s : t.scales) {
    const long cover = std::min(1L << (2 * s.scale - 1), static_cast<long>(t.half));
    if (k0 % s.band_width == 0 && k0 <= cover) return 0.5 * s.band_width;
  }
  throw InternalError("no tile edge at frequency " + std::to_string(k0));
}

// 1D band window in the frequency domain: sample indices (mod N) and complex
// weights. Per-band weights satisfy sum over k == r (mod 2B) of |w|^2 == 1,
// and adjacent bands are orthogonal because every rising edge is real and
// every falling edge is imaginary.
struct Window1D {
  std::vector<int> k;
  std::vector<std::complex<double>> w;
};

Window1D build_window(const Tiling& t, int j, int m) {
  const int N = t.size;
  const int H = t.half;
  const int B = 1 << (j - 1);
  const int a = B * m;
  const int b = B * (m + 1);
  Window1D out;
  auto push = [&](int k, std::complex<double> w) {
    out.k.push_back(((k % N) + N) % N);
    out.w.push_back(w);
  };

  if (m == 0) {
    // Band straddles k = 0: symmetric magnitude, odd phase, real at the origin.
    const double e = edge_halfwidth(t, b);
    const int lo = static_cast<int>(std::floor(-(B + e))) + 1;
    const int hi = static_cast<int>(std::ceil(B + e)) - 1;
    for (int k = lo; k <= hi; ++k) {
      const double d = std::abs(static_cast<double>(k));
      if (d >= B + e) continue;
      const double mag = (d <= B - e) ? 1.0 : ramp((B + e - d) / (2.0 * e));
      if (mag == 0.0) continue;
      const double core_end = B - e;
      double ph = (d > core_end) ? 0.5 * kPi : (core_end > 0 ? 0.5 * kPi * d / core_end : 0.0);
      if (k < 0) ph = -ph;
      if (k == 0) ph = 0.0;
      push(k, std::polar(mag, ph));
    }
    return out;
  }

  if (b == H) {
    // Band abuts the Nyquist frequency: folds onto itself, real everywhere.
    const double e = edge_halfwidth(t, a);
    const int lo = static_cast<int>(std::floor(a - e)) + 1;
    const int hi = static_cast<int>(std::ceil(2.0 * H - a + e)) - 1;
    for (int k = lo; k <= hi; ++k) {
      const double d = std::abs(static_cast<double>(k - H));
      if (d >= B + e) continue;
      const double mag = (d <= B - e) ? 1.0 : ramp((B + e - d) / (2.0 * e));
      if (mag == 0.0) continue;
      push(k, {mag, 0.0});
    }
    return out;
  }

  // Interior band: positive lobe with phase ramping 0 -> pi/2 across the
  // core, negative lobe mirrored with conjugate weights.
  const double ea = edge_halfwidth(t, a);
  const double eb = edge_halfwidth(t, b);
  const int lo = static_cast<int>(std::floor(a - ea)) + 1;
  const int hi = static_cast<int>(std::ceil(b + eb)) - 1;
  for (int k = lo; k <= hi; ++k) {
    if (k <= a - ea || k >= b + eb) continue;
    double mag;
    double ph;
    if (k < a + ea) {
      mag = ramp((k - (a - ea)) / (2.0 * ea));
      ph = 0.0;
    } else if (k > b - eb) {
      mag = ramp((b + eb - k) / (2.0 * eb));
      ph = 0.5 * kPi;
    } else {
      const double core0 = a + ea;
      const double core1 = b - eb;
      ph = 0.5 * kPi * (core1 > core0 ? (k - core0) / (core1 - core0) : 0.5);
      mag = 1.0;
    }
    if (mag == 0.0) continue;
    push(k, std::polar(mag, ph));
    push(-k, std::polar(mag, -ph));
  }
  return out;
}

std::vector<BlockAddress> canonical_roster(const Tiling& t) {
  std::vector<BlockAddress> out;
  for (const ScaleSpec& s : t.scales) {
    for (int m1 = 0; m1 < s.m_hi; ++m1) {
      for (int m2 = 0; m2 < s.m_hi; ++m2) {
        if (std::max(m1, m2) >= s.m_lo) out.push_back({s.scale, m1, m2});
      }
    }
  }
  return out;
}

// FFTW planning is not thread-safe; execution of a ready plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Per-size transform state: window tables and in-place FFT plans. Plans use
// FFTW_ESTIMATE so planning is deterministic and never probes the buffers.
class Engine {
 public:
  explicit Engine(int N) : tiling_(make_tiling(N)), roster_(canonical_roster(tiling_)) {
    for (const BlockAddress& addr : roster_) {
      window_for(addr.scale, addr.m1);
      window_for(addr.scale, addr.m2);
    }
    const std::scoped_lock lock(planner_mutex());
    big_ = fftw_alloc_complex(static_cast<std::size_t>(N) * N);
    big_fwd_ = fftw_plan_dft_2d(N, N, big_, big_, FFTW_FORWARD, FFTW_ESTIMATE);
    big_bwd_ = fftw_plan_dft_2d(N, N, big_, big_, FFTW_BACKWARD, FFTW_ESTIMATE);
    for (const ScaleSpec& s : tiling_.scales) {
      const int D = 2 * s.band_width;
      if (small_.count(D)) continue;
      fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(D) * D);
      fftw_plan fwd = fftw_plan_dft_2d(D, D, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      fftw_plan bwd = fftw_plan_dft_2d(D, D, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
      small_[D] = {buf, fwd, bwd};
    }
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  ~Engine() {
    const std::scoped_lock lock(planner_mutex());
    fftw_destroy_plan(big_fwd_);
    fftw_destroy_plan(big_bwd_);
    fftw_free(big_);
    for (auto& [d, s] : small_) {
      fftw_destroy_plan(s.fwd);
      fftw_destroy_plan(s.bwd);
      fftw_free(s.buf);
    }
  }

  CoefficientSet forward(const RealField& field) {
    const int N = tiling_.size;
    auto* X = reinterpret_cast<std::complex<double>*>(big_);
    for (std::size_t i = 0; i < field.values.size(); ++i) X[i] = {field.values[i], 0.0};
    fftw_execute(big_fwd_);
    const double inv_n = 1.0 / N;
    for (std::size_t i = 0; i < field.values.size(); ++i) X[i] *= inv_n;

    std::vector<ScaleBand> bands;
    bands.reserve(roster_.size());
    for (const BlockAddress& addr : roster_) {
      const int D = 2 << (addr.scale - 1);
      const Small& sm = small_.at(D);
      auto* G = reinterpret_cast<std::complex<double>*>(sm.buf);
      std::fill(G, G + static_cast<std::size_t>(D) * D, std::complex<double>{0.0, 0.0});
      const Window1D& w1 = window_for(addr.scale, addr.m1);
      const Window1D& w2 = window_for(addr.scale, addr.m2);
      for (std::size_t i1 = 0; i1 < w1.k.size(); ++i1) {
        const int k1 = w1.k[i1];
        const int r1 = k1 & (D - 1);
        const std::complex<double> c1 = std::conj(w1.w[i1]);
        const std::complex<double>* row = X + static_cast<std::size_t>(k1) * N;
        std::complex<double>* grow = G + static_cast<std::size_t>(r1) * D;
        for (std::size_t i2 = 0; i2 < w2.k.size(); ++i2) {
          const int k2 = w2.k[i2];
          grow[k2 & (D - 1)] += row[k2] * c1 * std::conj(w2.w[i2]);
        }
      }
      fftw_execute(sm.bwd);
      ScaleBand band;
      band.scale = addr.scale;
      band.m1 = addr.m1;
      band.m2 = addr.m2;
      band.grid_size = D;
      band.coefficients.resize(static_cast<std::size_t>(D) * D);
      const double inv_d = 1.0 / D;
      for (std::size_t i = 0; i < band.coefficients.size(); ++i) {
        band.coefficients[i] = G[i].real() * inv_d;
      }
      bands.push_back(std::move(band));
    }
    return CoefficientSet(N, std::move(bands));
  }

  RealField inverse(const CoefficientSet& coeffs) {
    const int N = tiling_.size;
    auto* X = reinterpret_cast<std::complex<double>*>(big_);
    std::fill(X, X + static_cast<std::size_t>(N) * N, std::complex<double>{0.0, 0.0});
    for (const ScaleBand& band : coeffs.bands()) {
      const int D = band.grid_size;
      for (double v : band.coefficients) {
        if (!std::isfinite(v)) {
          throw DataError("non-finite value in coefficient set");
        }
      }
      const Small& sm = small_.at(D);
      auto* C = reinterpret_cast<std::complex<double>*>(sm.buf);
      for (std::size_t i = 0; i < band.coefficients.size(); ++i) {
        C[i] = {band.coefficients[i], 0.0};
      }
      fftw_execute(sm.fwd);
      const double inv_d = 1.0 / D;
      for (std::size_t i = 0; i < band.coefficients.size(); ++i) C[i] *= inv_d;
      const Window1D& w1 = window_for(band.scale, band.m1);
      const Window1D& w2 = window_for(band.scale, band.m2);
      for (std::size_t i1 = 0; i1 < w1.k.size(); ++i1) {
        const int k1 = w1.k[i1];
        const std::complex<double>* crow = C + static_cast<std::size_t>(k1 & (D - 1)) * D;
        std::complex<double>* xrow = X + static_cast<std::size_t>(k1) * N;
        const std::complex<double> f1 = w1.w[i1];
        for (std::size_t i2 = 0; i2 < w2.k.size(); ++i2) {
          const int k2 = w2.k[i2];
          xrow[k2] += f1 * w2.w[i2] * crow[k2 & (D - 1)];
        }
      }
    }
    fftw_execute(big_bwd_);
    RealField out(N);
    const double inv_n = 1.0 / N;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = X[i].real() * inv_n;
    return out;
  }

  const std::vector<BlockAddress>& roster() const { return roster_; }

 private:
  struct Small {
    fftw_complex* buf;
    fftw_plan fwd;
    fftw_plan bwd;
  };

  const Window1D& window_for(int j, int m) {
    auto key = std::make_pair(j, m);
    auto it = windows_.find(key);
    if (it == windows_.end()) it = windows_.emplace(key, build_window(tiling_, j, m)).first;
    return it->second;
  }

  Tiling tiling_;
  std::vector<BlockAddress> roster_;
  std::map<std::pair<int, int>, Window1D> windows_;
  fftw_complex* big_ = nullptr;
  fftw_plan big_fwd_ = nullptr;
  fftw_plan big_bwd_ = nullptr;
  std::map<int, Small> small_;
};

Engine& engine_for(int N) {
  require_valid_size(N);
  thread_local std::map<int, std::unique_ptr<Engine>> cache;
  auto it = cache.find(N);
  if (it == cache.end()) it = cache.emplace(N, std::make_unique<Engine>(N)).first;
  return *it->second;
}

const ScaleSpec& scale_spec(const Tiling& t, int scale) {
  if (scale < 1 || scale > t.num_scales) {
    throw DataError("scale out of range: " + std::to_string(scale) + " not in [1, " +
                    std::to_string(t.num_scales) + "] for size " + std::to_string(t.size));
  }
  return t.scales[static_cast<std::size_t>(scale - 1)];
}

}  // namespace

CoefficientSet::CoefficientSet(int image_size, std::vector<ScaleBand> bands)
    : image_size_(image_size), bands_(std::move(bands)) {
  require_valid_size(image_size);
  const std::vector<BlockAddress> roster = canonical_roster(make_tiling(image_size));
  if (bands_.size() != roster.size()) {
    throw DataError("malformed coefficients: expected " + std::to_string(roster.size()) +
                    " bands, got " + std::to_string(bands_.size()));
  }
  for (std::size_t i = 0; i < roster.size(); ++i) {
    const ScaleBand& band = bands_[i];
    if (band.address() != roster[i]) {
      throw DataError("malformed coefficients: band roster out of canonical order");
    }
    const int expect = 2 << (band.scale - 1);
    if (band.grid_size != expect ||
        band.coefficients.size() != static_cast<std::size_t>(expect) * expect) {
      throw DataError("malformed coefficients: bad grid for scale " + std::to_string(band.scale));
    }
  }
}

int CoefficientSet::num_scales() const {
  return bands_.empty() ? 0 : bands_.back().scale;
}

ScaleBand& CoefficientSet::band(const BlockAddress& address) {
  auto it = std::lower_bound(bands_.begin(), bands_.end(), address,
                             [](const ScaleBand& b, const BlockAddress& a) {
                               return b.address() < a;
                             });
  if (it == bands_.end() || it->address() != address) {
    throw DataError("unknown block: scale=" + std::to_string(address.scale) +
                    " m1=" + std::to_string(address.m1) + " m2=" + std::to_string(address.m2));
  }
  return *it;
}

const ScaleBand& CoefficientSet::band(const BlockAddress& address) const {
  return const_cast<CoefficientSet*>(this)->band(address);
}

int transform_scales(int image_size) {
  require_valid_size(image_size);
  return make_tiling(image_size).num_scales;
}

std::vector<BlockAddress> list_blocks(int image_size, int scale) {
  require_valid_size(image_size);
  const Tiling t = make_tiling(image_size);
  const ScaleSpec& s = scale_spec(t, scale);
  std::vector<BlockAddress> out;
  for (int m1 = 0; m1 < s.m_hi; ++m1) {
    for (int m2 = 0; m2 < s.m_hi; ++m2) {
      if (std::max(m1, m2) >= s.m_lo) out.push_back({scale, m1, m2});
    }
  }
  return out;
}

std::size_t block_capacity(int image_size, int scale) {
  require_valid_size(image_size);
  const Tiling t = make_tiling(image_size);
  const ScaleSpec& s = scale_spec(t, scale);
  const std::size_t hi = static_cast<std::size_t>(s.m_hi);
  const std::size_t lo = static_cast<std::size_t>(s.m_lo);
  return hi * hi - lo * lo;
}

CoefficientSet forward(const RealField& field) {
  require_valid_size(field.size);
  return engine_for(field.size).forward(field);
}

CoefficientSet forward(const Image& image) {
  return forward(to_field(image));
}

RealField inverse(const CoefficientSet& coeffs) {
  require_valid_size(coeffs.image_size());
  return engine_for(coeffs.image_size()).inverse(coeffs);
}

std::span<const double> get_block(const CoefficientSet& coeffs, const BlockAddress& address) {
  const ScaleBand& band = coeffs.band(address);
  return {band.coefficients.data(), band.coefficients.size()};
}

void set_block(CoefficientSet& coeffs, const BlockAddress& address,
               std::span<const double> values) {
  ScaleBand& band = coeffs.band(address);
  if (values.size() != band.coefficients.size()) {
    throw DataError("malformed coefficients: block expects " +
                    std::to_string(band.coefficients.size()) + " values, got " +
                    std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw DataError("non-finite value in block payload");
  }
  std::copy(values.begin(), values.end(), band.coefficients.begin());
}

void dump_coefficients(const CoefficientSet& coeffs, std::ostream& out) {
  out << "scale,m1,m2,n1,n2,value\n";
  char buf[64];
  for (const ScaleBand& band : coeffs.bands()) {
    for (int n1 = 0; n1 < band.grid_size; ++n1) {
      for (int n2 = 0; n2 < band.grid_size; ++n2) {
        const double v = band.coefficients[static_cast<std::size_t>(n1) * band.grid_size + n2];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << band.scale << ',' << band.m1 << ',' << band.m2 << ',' << n1 << ',' << n2 << ','
            << buf << '\n';
      }
    }
  }
}

}  // namespace wamark
