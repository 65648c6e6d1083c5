#include "loreseval/greenreport.hpp"

#include <cmath>

#include "loreseval/error.hpp"

namespace loreseval::green {

void GpuProfile::validate() const {
  if (!(max_power_watts > 0.0) || !std::isfinite(max_power_watts)) {
    throw Error(ErrorCode::InvalidProfile, "max power must be positive");
  }
  if (!(utilization > 0.0 && utilization <= 1.0)) {
    throw Error(ErrorCode::InvalidProfile, "utilization must be in (0, 1]");
  }
}

double energy_kwh(const GpuProfile& profile, double runtime_hours) {
  profile.validate();
  if (!(runtime_hours > 0.0) || !std::isfinite(runtime_hours)) {
    throw Error(ErrorCode::InvalidProfile, "runtime must be positive");
  }
  return profile.max_power_watts * profile.utilization * runtime_hours / 1000.0;
}

double emissions_kg(double kwh, double intensity) {
  if (kwh < 0.0 || intensity < 0.0 || std::isnan(kwh) || std::isnan(intensity)) {
    throw Error(ErrorCode::NegativeInput, "energy and carbon intensity must be >= 0");
  }
  return kwh * intensity;
}

EnergyReport green_report(const GpuProfile& profile, const std::string& system_id,
                          double runtime_hours, std::optional<double> intensity,
                          bool carbon_neutral) {
  if (carbon_neutral && intensity && *intensity != 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "a carbon-neutral region cannot have a non-zero intensity");
  }
  if (!carbon_neutral && !intensity) {
    throw Error(ErrorCode::InvalidArgument,
                "carbon intensity is required unless the region is carbon neutral");
  }
  EnergyReport report;
  report.profile = profile;
  report.run = {system_id, runtime_hours, carbon_neutral ? 0.0 : *intensity};
  report.carbon_neutral = carbon_neutral;
  report.kwh = energy_kwh(profile, runtime_hours);
  report.kg_co2 = emissions_kg(report.kwh, report.run.region_carbon_intensity);
  return report;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

}  // namespace loreseval::green
