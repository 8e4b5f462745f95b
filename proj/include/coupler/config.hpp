#ifndef COUPLER_CONFIG_HPP
#define COUPLER_CONFIG_HPP

#include <string>

#include "coupler/constants.hpp"

namespace coupler {

// Run-wide configuration; defaults are CODATA constants. A JSON file named
// by the DIPOLE_COUPLER_CONFIG environment variable overrides the fields it
// provides.
struct RunConfig {
  double hbar = hbar_si;          // J s
  double c0 = speed_of_light;     // m/s
  double rel_tol = 1e-9;          // default quadrature tolerance
  std::string output_dir = ".";
  std::string format = "csv";     // "csv" or "json"

  void validate() const;

  static RunConfig from_json_file(const std::string& path);

  // Defaults, overridden by DIPOLE_COUPLER_CONFIG when set.
  static RunConfig load_from_env();
};

}  // namespace coupler

#endif  // COUPLER_CONFIG_HPP
