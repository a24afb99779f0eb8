#include "pansharp/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pansharp/error.hpp"
#include "pansharp/kernel.hpp"

namespace pansharp {

namespace {

// std distributions are implementation-defined; draw straight from the
// engine so a seed means the same scene on every standard library.
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double operator()(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 engine_;
};

struct Region {
  double ci, cj, ri, rj;
  bool disc;
  double offset[3];
};

std::vector<Band> render_scene(Uniform& rnd, std::size_t size) {
  const double n = static_cast<double>(size);
  double base[3], slope_i[3], slope_j[3], texture[3];
  const double shared_i = rnd(-40, 40);
  const double shared_j = rnd(-40, 40);
  for (int k = 0; k < 3; ++k) {
    base[k] = rnd(90, 130);
    slope_i[k] = shared_i * rnd(0.7, 1.3);
    slope_j[k] = shared_j * rnd(0.7, 1.3);
    texture[k] = rnd(6, 12);
  }
  const double period_i = rnd(5, 9);
  const double period_j = rnd(5, 9);

  std::vector<Region> regions(6 + size / 16);
  for (Region& r : regions) {
    r.ci = rnd(0, n);
    r.cj = rnd(0, n);
    r.ri = rnd(0.05, 0.2) * n;
    r.rj = rnd(0.05, 0.2) * n;
    r.disc = rnd() < 0.5;
    // Each region is a cover class with its own spectral signature.
    for (double& o : r.offset) o = rnd(-50, 50);
  }

  struct Line {
    bool horizontal;
    std::size_t at;
    double amplitude;
  };
  std::vector<Line> lines(2 + size / 32);
  for (Line& l : lines) {
    l.horizontal = rnd() < 0.5;
    l.at = static_cast<std::size_t>(rnd(0, n - 1));
    l.amplitude = rnd(30, 55) * (rnd() < 0.5 ? -1.0 : 1.0);
  }

  std::vector<Band> bands;
  for (int k = 0; k < 3; ++k) {
    Band b(size, size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j) {
        const double y = static_cast<double>(i) / n;
        const double x = static_cast<double>(j) / n;
        double v = base[k] + slope_i[k] * (y - 0.5) + slope_j[k] * (x - 0.5);
        v += texture[k] * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / period_i) *
             std::cos(2.0 * std::numbers::pi * static_cast<double>(j) / period_j);
        for (const Region& r : regions) {
          const double di = (static_cast<double>(i) - r.ci) / r.ri;
          const double dj = (static_cast<double>(j) - r.cj) / r.rj;
          const bool inside = r.disc ? di * di + dj * dj <= 1.0 : std::abs(di) <= 1.0 && std::abs(dj) <= 1.0;
          if (inside) v += r.offset[k];
        }
        for (const Line& l : lines)
          if ((l.horizontal ? i : j) == l.at) v += l.amplitude;
        b(i, j) = quantize_dn(v);
      }
    bands.push_back(std::move(b));
  }
  return bands;
}

Band decimate(const Band& b, std::size_t scale) {
  const std::size_t w = b.width() / scale;
  const std::size_t h = b.height() / scale;
  Band out(w, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < w; ++j) out(i, j) = quantize_dn(b(i * scale + scale / 2, j * scale + scale / 2));
  return out;
}

}  // namespace

std::size_t degradation_window(std::size_t scale) {
  const std::size_t odd = scale % 2 == 1 ? scale : scale + 1;
  return odd < 3 ? 3 : odd;
}

SyntheticPair generate_synthetic_pair(std::uint64_t seed, std::size_t size, std::size_t scale) {
  if (size == 0 || scale == 0) fail(ErrorKind::InvalidArgument, "size and scale must be positive");
  if (size % scale != 0)
    fail(ErrorKind::InvalidArgument,
         "size " + std::to_string(size) + " is not divisible by scale " + std::to_string(scale));

  Uniform rnd(seed);
  MultiImage reference(render_scene(rnd, size), {"R", "G", "B"});
  Band pan = synthesize_pan(reference);
  MultiImage ms = degrade(reference, scale);
  return {std::move(pan), std::move(ms), std::move(reference), scale};
}

Band synthesize_pan(const MultiImage& reference) {
  if (reference.band_count() != 3)
    fail(ErrorKind::NeedThreeBands, "synthetic PAN needs an R, G, B reference");
  Band pan(reference.width(), reference.height());
  const auto r = reference.band(0).pixels();
  const auto g = reference.band(1).pixels();
  const auto b = reference.band(2).pixels();
  for (std::size_t p = 0; p < pan.size(); ++p) pan.pixels()[p] = quantize_dn(0.25 * r[p] + 0.5 * g[p] + 0.25 * b[p]);
  return pan;
}

MultiImage degrade(const MultiImage& reference, std::size_t scale) {
  if (scale == 0 || reference.width() % scale != 0 || reference.height() % scale != 0)
    fail(ErrorKind::InvalidArgument, "reference size must be divisible by scale");
  std::vector<Band> ms;
  for (const Band& b : reference.bands()) ms.push_back(decimate(lowpass_box(b, degradation_window(scale)), scale));
  return MultiImage(std::move(ms), reference.labels());
}

}  // namespace pansharp
