#include <cmath>
#include <string>

#include "atomlens/errors.hpp"
#include "atomlens/spectro.hpp"

namespace atomlens::spectro {
namespace {

void validate(const SpectrumPoint& p, std::size_t index) {
  const std::string where = " (point " + std::to_string(index) + ")";
  if (!(p.dwell > 0.0)) throw DomainError("spectrum: dwell must be positive" + where);
  if (p.reference_dwell && !(*p.reference_dwell > 0.0)) {
    throw DomainError("spectrum: reference dwell must be positive" + where);
  }
  if (p.counts_signal < 0) throw DomainError("spectrum: negative signal counts" + where);
  if (p.counts_reference <= 0) {
    throw DomainError("spectrum: reference counts must be positive for normalization" + where);
  }
}

// Reference counts rescaled to the signal dwell.
double scaled_reference(const SpectrumPoint& p) {
  return static_cast<double>(p.counts_reference) * p.dwell / p.reference_dwell.value_or(p.dwell);
}

}  // namespace

std::vector<NormalizedPoint> normalize_transmission(std::span<const SpectrumPoint> points) {
  std::vector<NormalizedPoint> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SpectrumPoint& p = points[i];
    validate(p, i);
    const double reference = scaled_reference(p);
    if (p.counts_signal == 0) {
      out.push_back({p.detuning, 0.0, 1.0 / reference, true});
      continue;
    }
    const double signal = static_cast<double>(p.counts_signal);
    const double t = signal / reference;
    const double sigma =
        t * std::sqrt(1.0 / signal + 1.0 / static_cast<double>(p.counts_reference));
    out.push_back({p.detuning, t, sigma, false});
  }
  return out;
}

std::vector<NormalizedPoint> normalize_reflection(std::span<const SpectrumPoint> points,
                                                  double background_rate) {
  if (!(background_rate >= 0.0)) throw DomainError("normalize_reflection: background rate < 0");
  std::vector<NormalizedPoint> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SpectrumPoint& p = points[i];
    validate(p, i);
    const double rate = p.background_rate.value_or(background_rate);
    if (!(rate >= 0.0)) throw DomainError("normalize_reflection: background rate < 0");
    const double reference = scaled_reference(p);
    const double expected_background = rate * p.dwell;
    const double signal = static_cast<double>(p.counts_signal);
    const double r = (signal - expected_background) / reference;
    const double count_variance = signal + expected_background;
    if (count_variance == 0.0) {
      out.push_back({p.detuning, r, 1.0 / reference, true});
      continue;
    }
    const double variance = count_variance / (reference * reference) +
                            r * r / static_cast<double>(p.counts_reference);
    out.push_back({p.detuning, r, std::sqrt(variance), false});
  }
  return out;
}

std::vector<DataPoint> to_fit_data(std::span<const NormalizedPoint> points) {
  std::vector<DataPoint> data;
  data.reserve(points.size());
  for (const NormalizedPoint& p : points) data.push_back({p.detuning, p.value, p.sigma});
  return data;
}

}  // namespace atomlens::spectro
