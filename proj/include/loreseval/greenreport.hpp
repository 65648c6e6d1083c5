#pragma once

#include <optional>
#include <string>

namespace loreseval::green {

// Static power model: the utilisation is an assumed fraction of the card's
// maximum draw, not a measurement.
struct GpuProfile {
  std::string name = "gpu";
  double max_power_watts = 400.0;
  double utilization = 0.8;

  void validate() const;  // throws Error{InvalidProfile}
};

struct RunRecord {
  std::string system_id;
  double runtime_hours = 0.0;
  double region_carbon_intensity = 0.0;  // kgCO2 per kWh
};

struct EnergyReport {
  GpuProfile profile;
  RunRecord run;
  double kwh = 0.0;
  double kg_co2 = 0.0;
  bool carbon_neutral = false;
};

double energy_kwh(const GpuProfile& profile, double runtime_hours);
double emissions_kg(double kwh, double intensity);

// Exactly one of `intensity` or `carbon_neutral` must be supplied; a
// carbon-neutral region means intensity 0.
EnergyReport green_report(const GpuProfile& profile, const std::string& system_id,
                          double runtime_hours, std::optional<double> intensity,
                          bool carbon_neutral);

// Display rounding used by the table (one decimal).
double round_to(double value, int decimals);

}  // namespace loreseval::green
