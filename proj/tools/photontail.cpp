// photontail: ground state, photon amplitudes and position-space asymptotics
// of the truncated spin-boson model.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "photontail/config.hpp"
#include "photontail/errors.hpp"
#include "photontail/pipeline.hpp"
#include "photontail/version.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitSolver = 4;

struct CommonArgs {
  std::string config;
  std::string out;
  std::optional<long long> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "key = value configuration file");
  cmd->add_option("--out", args.out, "output directory (overrides 'out')");
  cmd->add_option("--seed", args.seed, "random seed (overrides 'seed')");
}

photontail::RunConfig resolve(const CommonArgs& args) {
  photontail::RunConfig cfg = args.config.empty() ? photontail::RunConfig{} : photontail::load_config(args.config);
  if (!args.out.empty()) cfg.out_dir = args.out;
  if (args.seed) {
    if (*args.seed < 0) throw photontail::ConfigError("--seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(*args.seed);
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photontail: photon localization in the spin-boson ground state"};
  app.set_version_flag("--version", std::string(photontail::kVersion));
  app.require_subcommand(1);

  CommonArgs args;
  auto* ground = app.add_subcommand("ground", "compute E, the gap and the ground vector");
  add_common(ground, args);

  auto* amplitude = app.add_subcommand("amplitude", "photon amplitude a(k)U via the pull-through formula");
  add_common(amplitude, args);
  std::string k_text, k_file;
  auto* k_opt = amplitude->add_option("--k", k_text, "momentum kx,ky,kz");
  auto* list_opt = amplitude->add_option("--k-list", k_file, "file with one k per line (CSV batch mode)");
  k_opt->excludes(list_opt);

  auto* asym = app.add_subcommand("asymptotics", "decay of b(x)U and a-hat(x)U, limit vector");
  add_common(asym, args);

  auto* verify = app.add_subcommand("verify", "run the invariant suite; exit 1 on any failure");
  add_common(verify, args);

  CLI11_PARSE(app, argc, argv);

  try {
    const photontail::RunConfig cfg = resolve(args);
    if (ground->parsed()) {
      photontail::run_ground(cfg, std::cout);
      std::cout << "wrote " << cfg.out_dir << "/manifest.txt and ground_state.csv\n";
    } else if (amplitude->parsed()) {
      std::vector<photontail::Vec3> ks;
      if (!k_file.empty()) {
        ks = photontail::read_k_list(k_file);
      } else if (!k_text.empty()) {
        ks.push_back(photontail::parse_vec3(k_text));
      } else {
        throw photontail::ConfigError("amplitude needs --k or --k-list");
      }
      photontail::run_amplitude(cfg, ks, std::cout);
    } else if (asym->parsed()) {
      photontail::run_asymptotics(cfg, std::cout);
      std::cout << "wrote " << cfg.out_dir << "/decay.csv, limit.csv, manifest.txt\n";
    } else if (verify->parsed()) {
      const auto summary = photontail::run_verify(cfg, std::cout);
      return summary.ok() ? 0 : kExitVerifyFailed;
    }
  } catch (const photontail::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const photontail::DegenerateGroundState& e) {
    std::cerr << "DegenerateGroundState: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const photontail::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitSolver;
  } catch (const photontail::NumericalError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const photontail::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
