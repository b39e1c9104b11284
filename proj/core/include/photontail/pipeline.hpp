#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "photontail/asymptotics.hpp"
#include "photontail/config.hpp"
#include "photontail/hamiltonian.hpp"
#include "photontail/surrogate.hpp"

namespace photontail {

/// "%.17g"
std::string format_double(double v);

std::shared_ptr<const AssembledModel> build_model(const RunConfig& cfg);
SurrogateOptions surrogate_options(const RunConfig& cfg);
SpectralSurrogate build_surrogate(const RunConfig& cfg);

std::vector<double> config_radii(const RunConfig& cfg);
std::vector<Vec3> config_directions(const RunConfig& cfg, const Vec3& total_spin);

/// Writes manifest.txt and ground_state.csv into cfg.out_dir.
GroundState run_ground(const RunConfig& cfg, std::ostream& log);

/// One line per k: kx,ky,kz,norm,bound,transverse_residual.
void run_amplitude(const RunConfig& cfg, const std::vector<Vec3>& ks, std::ostream& out);
/// Reads one k per line ("kx,ky,kz" or whitespace separated; '#' comments).
std::vector<Vec3> read_k_list(const std::string& path);

/// Writes decay.csv, limit.csv and manifest.txt into cfg.out_dir.
AsymptoticsReport run_asymptotics(const RunConfig& cfg, std::ostream& log);

void write_decay_csv(std::ostream& out, const AsymptoticsReport& rep);
void write_limit_csv(std::ostream& out, const AsymptoticsReport& rep);

struct VerifySummary {
  int passed = 0;
  int failed = 0;
  bool ok() const { return failed == 0; }
};

/// Every module's invariant checks on small built-in fixtures and on the
/// configured model; one PASS/FAIL line per check.
VerifySummary run_verify(const RunConfig& cfg, std::ostream& log);

}  // namespace photontail
