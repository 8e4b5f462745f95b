#include "coupler/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "coupler/errors.hpp"

namespace coupler {

void RunConfig::validate() const {
  if (!std::isfinite(hbar) || hbar <= 0.0 || !std::isfinite(c0) || c0 <= 0.0)
    throw DomainError("RunConfig: physical constants must be positive");
  if (!std::isfinite(rel_tol) || rel_tol <= 0.0)
    throw DomainError("RunConfig: tolerances must be positive");
  if (format != "csv" && format != "json")
    throw DomainError("RunConfig: format must be 'csv' or 'json'");
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    file >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config file '" + path + "': " + e.what());
  }
  RunConfig cfg;
  if (j.contains("hbar")) cfg.hbar = j.at("hbar").get<double>();
  if (j.contains("c0")) cfg.c0 = j.at("c0").get<double>();
  if (j.contains("rel_tol")) cfg.rel_tol = j.at("rel_tol").get<double>();
  if (j.contains("output_dir")) cfg.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load_from_env() {
  const char* path = std::getenv("DIPOLE_COUPLER_CONFIG");
  if (path == nullptr || *path == '\0') return RunConfig{};
  return from_json_file(path);
}

}  // namespace coupler
