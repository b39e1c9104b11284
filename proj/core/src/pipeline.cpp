#include "photontail/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "photontail/errors.hpp"
#include "photontail/fock.hpp"
#include "photontail/groundstate.hpp"
#include "photontail/modes.hpp"
#include "photontail/pullthrough.hpp"
#include "photontail/quadrature.hpp"
#include "photontail/rng.hpp"
#include "photontail/spin.hpp"
#include "photontail/version.hpp"

namespace photontail {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string format_vec(const Vec3& v) {
  return format_double(v[0]) + "," + format_double(v[1]) + "," + format_double(v[2]);
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = (std::filesystem::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

class Manifest {
 public:
  Manifest(const RunConfig& cfg, const std::string& command) {
    add("version", kVersion);
    add("command", command);
    for (const auto& [k, v] : cfg.echo) add("config." + k, v);
    add("effective.seed", std::to_string(cfg.seed));
  }
  void add(const std::string& key, const std::string& value) { items_.emplace_back(key, value); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, const Vec3& value) { add(key, format_vec(value)); }
  void write(const std::string& dir) const {
    std::ofstream out = open_output(dir, "manifest.txt");
    for (const auto& [k, v] : items_) out << k << " = " << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

void add_ground(Manifest& m, const SpectralSurrogate& s) {
  m.add("dimension", std::to_string(s.dimension()));
  m.add("energy", s.energy());
  m.add("gap", s.gap());
  m.add("second_eigenvalue", s.ground().second);
  m.add("residual", s.ground().residual);
  m.add("solver", s.ground().dense ? "dense" : "lanczos");
  m.add("phase_anchor", std::to_string(s.ground().phase_anchor));
  m.add("total_spin", s.total_spin());
}

}  // namespace

std::shared_ptr<const AssembledModel> build_model(const RunConfig& cfg) {
  return std::make_shared<const AssembledModel>(assemble(cfg.model));
}

SurrogateOptions surrogate_options(const RunConfig& cfg) {
  SurrogateOptions o;
  o.ground.tol = cfg.solver_tol;
  o.ground.seed = cfg.seed;
  o.resolvent.tol = cfg.solver_tol;
  return o;
}

SpectralSurrogate build_surrogate(const RunConfig& cfg) {
  return SpectralSurrogate::from_model(build_model(cfg), surrogate_options(cfg));
}

std::vector<double> config_radii(const RunConfig& cfg) {
  return log_radii(cfg.radii_min, cfg.radii_max, cfg.radii_count);
}

std::vector<Vec3> config_directions(const RunConfig& cfg, const Vec3& total_spin) {
  if (!cfg.explicit_directions.empty()) return cfg.explicit_directions;
  return default_directions(total_spin, cfg.random_directions, cfg.seed);
}

GroundState run_ground(const RunConfig& cfg, std::ostream& log) {
  const auto model = build_model(cfg);
  const GroundState gs = ground_state(*model, surrogate_options(cfg).ground);
  log << "dimension " << model->dimension() << "\nE = " << format_double(gs.energy)
      << "\ngap = " << format_double(gs.gap) << "\nresidual = " << format_double(gs.residual) << '\n';

  Manifest m(cfg, "ground");
  m.add("dimension", std::to_string(model->dimension()));
  m.add("energy", gs.energy);
  m.add("gap", gs.gap);
  m.add("second_eigenvalue", gs.second);
  m.add("residual", gs.residual);
  m.add("solver", gs.dense ? "dense" : "lanczos");
  m.add("phase_anchor", std::to_string(gs.phase_anchor));
  m.add("total_spin", total_spin(gs.vector, model->particles()));
  m.add("state_file", "ground_state.csv");
  m.write(cfg.out_dir);
  std::ofstream csv = open_output(cfg.out_dir, "ground_state.csv");
  write_state_csv(csv, model->basis, gs.vector);
  return gs;
}

std::vector<Vec3> read_k_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open k-list '" + path + "'");
  std::vector<Vec3> ks;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 3) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected three numbers");
    ks.emplace_back(parse_double(tok[0], "k"), parse_double(tok[1], "k"), parse_double(tok[2], "k"));
  }
  return ks;
}

void run_amplitude(const RunConfig& cfg, const std::vector<Vec3>& ks, std::ostream& out) {
  for (const Vec3& k : ks)
    if (k.norm() == 0.0) throw DomainError("photon_amplitude: k = 0 is excluded");
  const SpectralSurrogate s = build_surrogate(cfg);
  out << "kx,ky,kz,norm,bound,transverse_residual\n";
  for (const Vec3& k : ks) {
    const AmplitudeVector a = photon_amplitude(s, k);
    out << format_vec(k) << ',' << format_double(a.norm()) << ',' << format_double(amplitude_bound(s, k)) << ','
        << format_double(a.contract(k).norm()) << '\n';
  }
}

void write_decay_csv(std::ostream& out, const AsymptoticsReport& rep) {
  out << "radius,dir_index,norm_ahat,norm_b,scaled_norm_b,err_lemma_product\n";
  for (const auto& smp : rep.samples) {
    out << format_double(smp.radius) << ',' << smp.dir_index << ',' << format_double(smp.norm_ahat) << ','
        << format_double(smp.norm_b) << ',' << format_double(smp.scaled_norm_b) << ','
        << format_double(smp.err_lemma_product) << '\n';
  }
}

void write_limit_csv(std::ostream& out, const AsymptoticsReport& rep) {
  out << "dir_index,vx,vy,vz,cross_norm,limit_norm,L1_re,L1_im,L2_re,L2_im,L3_re,L3_im,"
         "kappa_measured,kappa_used,kappa_quoted,kappa_derived,cosine,prediction_error\n";
  for (std::size_t d = 0; d < rep.per_direction.size(); ++d) {
    const auto& s = rep.per_direction[d];
    out << d << ',' << format_vec(s.v) << ',' << format_double(s.cross_norm) << ',' << format_double(s.limit_norm);
    for (const cplx& c : s.limit_pattern) out << ',' << format_double(c.real()) << ',' << format_double(c.imag());
    out << ',' << format_double(s.kappa_measured) << ',' << format_double(rep.kappa_used) << ','
        << format_double(rep.kappa_quoted) << ',' << format_double(rep.kappa_derived) << ','
        << format_double(s.cosine) << ',' << format_double(s.prediction_error) << '\n';
  }
}

AsymptoticsReport run_asymptotics(const RunConfig& cfg, std::ostream& log) {
  const SpectralSurrogate s = build_surrogate(cfg);
  DecayOptions opts;
  opts.ahat_max_radius = cfg.ahat_max_radius;
  opts.kappa = cfg.kappa;
  const AsymptoticsReport rep = decay_report(s, config_directions(cfg, s.total_spin()), config_radii(cfg), opts);

  {
    std::ofstream out = open_output(cfg.out_dir, "decay.csv");
    write_decay_csv(out, rep);
  }
  {
    std::ofstream out = open_output(cfg.out_dir, "limit.csv");
    write_limit_csv(out, rep);
  }
  Manifest m(cfg, "asymptotics");
  add_ground(m, s);
  m.add("kappa_oracle", rep.kappa_oracle);
  m.add("kappa_used", rep.kappa_used);
  m.add("kappa_quoted_magnitude", rep.kappa_quoted);
  m.add("kappa_derived_magnitude", rep.kappa_derived);
  m.add("reference_direction", std::to_string(rep.reference_direction));
  const auto& ref = rep.per_direction[rep.reference_direction];
  m.add("kappa_measured", ref.kappa_measured);
  m.add("density_exponent", rep.density_exponent);
  m.add("b_exponent", ref.b_fit.slope);
  m.add("b_exponent_stderr", ref.b_fit.slope_stderr);
  m.add("scaled_b_slope", ref.scaled_fit.slope);
  for (std::size_t d = 0; d < rep.per_direction.size(); ++d) {
    const auto& pd = rep.per_direction[d];
    const std::string p = "dir." + std::to_string(d) + ".";
    m.add(p + "v", pd.v);
    m.add(p + "b_exponent", pd.b_fit.slope);
    m.add(p + "b_exponent_stderr", pd.b_fit.slope_stderr);
    m.add(p + "b_fit_residual", pd.b_fit.residual_rms);
    m.add(p + "scaled_b_slope", pd.scaled_fit.slope);
    m.add(p + "lemma_exponent", pd.lemma_fit.slope);
    m.add(p + "lemma_exponent_stderr", pd.lemma_fit.slope_stderr);
    m.add(p + "kappa_measured", pd.kappa_measured);
    m.add(p + "asymptotic", pd.asymptotic ? "yes" : "no");
  }
  m.write(cfg.out_dir);

  log << "kappa_oracle = " << format_double(rep.kappa_oracle) << "\nkappa_measured = "
      << format_double(ref.kappa_measured) << " (quoted closed form " << format_double(rep.kappa_quoted)
      << ", derivation gives " << format_double(rep.kappa_derived) << ")\ndensity exponent = "
      << format_double(rep.density_exponent) << '\n';
  for (std::size_t d = 0; d < rep.per_direction.size(); ++d)
    if (!rep.per_direction[d].asymptotic) log << "warning: direction " << d << " is not yet asymptotic\n";
  return rep;
}

// ---------------------------------------------------------------------------
// verify

namespace {

class Checker {
 public:
  explicit Checker(std::ostream& log) : log_(log) {}

  void check(const std::string& name, bool ok, const std::string& detail) {
    log_ << (ok ? "PASS " : "FAIL ") << name << "  " << detail << '\n';
    (ok ? summary_.passed : summary_.failed) += 1;
  }
  void value(const std::string& name, double v, double limit) {
    check(name, v <= limit, format_double(v) + " <= " + format_double(limit));
  }
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, std::string("threw: ") + e.what());
    }
  }
  VerifySummary summary() const { return summary_; }

 private:
  std::ostream& log_;
  VerifySummary summary_;
};

void verify_fock_algebra(Checker& c, Rng& rng) {
  const FockBasis basis(4, 3);
  const auto n = static_cast<Index>(basis.size());
  std::vector<double> omega = {0.3, 0.7, 1.1, 2.0};
  const SparseMatrix dg = d_gamma(basis, omega).matrix;
  double ccr = 0.0, comm = 0.0, segal = 0.0, herm = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    StateVector psi = rng.complex_vector(n);
    for (Index i = 0; i < n; ++i)
      if (basis.total(static_cast<std::size_t>(i)) > 2) psi[i] = 0.0;
    Eigen::VectorXcd v = rng.complex_vector(4);
    const SparseHermitianOperator phi = segal_field(basis, v);
    herm = std::max(herm, phi.hermiticity_residual());
    for (std::size_t i = 0; i < 4; ++i) {
      const StateVector ai = ladder(basis, i, Ladder::annihilate, psi);
      comm = std::max(comm, (dg * ai - ladder(basis, i, Ladder::annihilate, dg * psi) + omega[i] * ai).norm());
      const StateVector s = std::sqrt(2.0) * (phi.matrix * ai - ladder(basis, i, Ladder::annihilate, phi.matrix * psi));
      segal = std::max(segal, (s + v[static_cast<Index>(i)] * psi).norm());
      for (std::size_t j = 0; j < 4; ++j) {
        StateVector r = ladder(basis, i, Ladder::annihilate, ladder(basis, j, Ladder::create, psi)) -
                        ladder(basis, j, Ladder::create, ai);
        if (i == j) r -= psi;
        ccr = std::max(ccr, r.norm());
      }
    }
  }
  c.value("fock.ccr_interior", ccr, 1e-12);
  c.value("fock.dgamma_commutator", comm, 1e-12);
  c.value("fock.segal_commutator", segal, 1e-12);
  c.value("fock.segal_hermitian", herm, 1e-12);
}

void verify_spin(Checker& c) {
  double comm = 0.0, su2 = 0.0;
  for (int m = 1; m <= 3; ++m)
    for (int k = 1; k <= 3; ++k) {
      const auto a = sigma_op(m, 1, 2).matrix;
      const auto b = sigma_op(k, 2, 2).matrix;
      comm = std::max(comm, (a * b - b * a).cwiseAbs().maxCoeff());
    }
  for (int lambda = 1; lambda <= 2; ++lambda) {
    const auto s1 = sigma_op(1, lambda, 2).matrix;
    const auto s2 = sigma_op(2, lambda, 2).matrix;
    const auto s3 = sigma_op(3, lambda, 2).matrix;
    su2 = std::max(su2, (s1 * s2 - s2 * s1 - cplx(0.0, 2.0) * s3).cwiseAbs().maxCoeff());
  }
  c.value("spin.distinct_particles_commute", comm, 1e-14);
  c.value("spin.su2_relation", su2, 1e-14);
}

void verify_modes(Checker& c, const AssembledModel& model) {
  double trans = 0.0, complete = 0.0, field = 0.0;
  for (const auto& node : model.grid.nodes()) {
    const Vec3 kh = node.k.normalized();
    trans = std::max({trans, std::abs(node.pol[0].dot(node.k)), std::abs(node.pol[1].dot(node.k)),
                      std::abs(node.pol[0].dot(node.pol[1]))});
    const Eigen::Matrix3d p = node.pol[0] * node.pol[0].transpose() + node.pol[1] * node.pol[1].transpose() +
                              kh * kh.transpose();
    complete = std::max(complete, (p - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff());
    for (int m = 1; m <= 3; ++m)
      for (const Vec3& x : model.config.positions) {
        const CVec3 b = field_coefficient(m, x, node.k, model.config.chi);
        field = std::max(field, std::abs(b.dot(node.k.cast<cplx>())) / std::max(b.norm(), 1e-300) / node.omega);
      }
  }
  c.value("modes.transversality", trans, 1e-12);
  c.value("modes.polarization_completeness", complete, 1e-12);
  c.value("modes.field_transversality", field, 1e-14);
}

void verify_model(Checker& c, const AssembledModel& model) {
  c.value("hamiltonian.hermitian", model.hamiltonian.hermiticity_residual(), 1e-12);
  const SparseMatrix lin = hamiltonian_at(model, 2.0 * model.config.g).matrix - hamiltonian_at(model, 0.0).matrix -
                           2.0 * (model.hamiltonian.matrix - hamiltonian_at(model, 0.0).matrix);
  double worst = 0.0;
  for (Index r = 0; r < lin.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(lin, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  c.value("hamiltonian.linear_in_g", worst, 1e-12);
  const SparseMatrix h0 = hamiltonian_at(model, 0.0).matrix;
  const SparseMatrix nn = kron_identity(number_operator(model.basis).matrix, model.spin_dim);
  const SparseMatrix cm = h0 * nn - nn * h0;
  double cw = 0.0;
  for (Index r = 0; r < cm.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(cm, r); it; ++it) cw = std::max(cw, std::abs(it.value()));
  c.value("hamiltonian.free_part_conserves_number", cw, 1e-12);
}

void verify_ground(Checker& c, const SpectralSurrogate& s, double tol, Rng& rng) {
  const GroundState& gs = s.ground();
  c.value("groundstate.residual", gs.residual, tol);
  c.value("groundstate.normalized", std::abs(gs.vector.norm() - 1.0), 1e-12);
  c.check("groundstate.gap_positive", gs.gap > 0.0, "gap " + format_double(gs.gap));
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    StateVector psi = rng.complex_vector(s.dimension());
    psi.normalize();
    worst = std::max(worst, s.energy() - psi.dot(s.hamiltonian().matrix * psi).real());
  }
  c.value("groundstate.variational", worst, tol);
  if (const auto& model = s.model()) {
    const SparseMatrix nn = kron_identity(number_operator(model->basis).matrix, model->spin_dim);
    const StateVector nu = nn * gs.vector;
    const double n1 = gs.vector.dot(nu).real();
    const double n2 = nu.squaredNorm();
    c.check("groundstate.number_moments", std::isfinite(n2) && n2 >= n1 && n1 >= 0.0,
            "<N> = " + format_double(n1) + ", <N^2> = " + format_double(n2));
  }
}

void verify_pullthrough(Checker& c, const SpectralSurrogate& s, Rng& rng) {
  if (s.model()) {
    const NumberCheck nc = number_check(s);
    c.check("pullthrough.number_identity", nc.holds(1e-12),
            "lhs " + format_double(nc.lhs) + ", rhs " + format_double(nc.rhs));
  }
  double bound_violation = -1.0, trans = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Vec3 k = rng.unit_vector() * (0.05 + 6.0 * rng.uniform());
    const AmplitudeVector a = photon_amplitude(s, k);
    bound_violation = std::max(bound_violation, a.norm() - amplitude_bound(s, k) * (1.0 + 1e-12));
    trans = std::max(trans, a.contract(k).norm() / std::max(k.norm() * a.norm(), 1e-300));
  }
  c.check("pullthrough.amplitude_bound", bound_violation <= 0.0,
          "max(norm - bound) = " + format_double(bound_violation));
  c.value("pullthrough.amplitude_transversality", trans, 1e-12);
  double contraction = 0.0;
  for (int i = 0; i < 20; ++i) {
    const StateVector f = rng.complex_vector(s.dimension());
    // Every fourth shift sits on the imaginary axis.
    const double re = i % 4 == 0 ? 0.0 : std::pow(10.0, -3.0 + 5.0 * rng.uniform());
    const cplx z(re, 10.0 * (2.0 * rng.uniform() - 1.0));
    contraction = std::max(contraction, operator_filter(z, s, f).norm() / f.norm() - 1.0);
  }
  c.value("pullthrough.filter_contraction", contraction, 1e-12);
}

void verify_asymptotics(Checker& c, const RunConfig& cfg, const SpectralSurrogate& s, Rng& rng) {
  double sphere = 0.0;
  for (double lam : {0.1, 1.0, kPi, 10.0})
    for (int i = 0; i < 5; ++i) {
      const Vec3 v = rng.unit_vector();
      const int m = 1 + static_cast<int>(3.0 * rng.uniform()) % 3;
      sphere = std::max(sphere, (sphere_integral_reference(v, m, lam) - sphere_integral_quadrature(v, m, lam)).norm());
    }
  c.value("asymptotics.sphere_identity", sphere, 1e-8);
  c.value("asymptotics.contour_calibration", std::abs(contour_calibration() - 0.75 * std::sqrt(kPi)), 1e-10);

  const StateVector& f = s.f(0);
  std::vector<cplx> real_seq, imag_seq;
  for (int j = 0; j <= 6; ++j) {
    real_seq.emplace_back(std::pow(10.0, -j) * s.gap(), 0.0);
    imag_seq.emplace_back(0.0, std::pow(10.0, -j) * s.gap());
  }
  for (const auto& [name, seq] : {std::pair{"real", real_seq}, std::pair{"imaginary", imag_seq}}) {
    const ProjectionTable t = projection_limit_check(s, f, seq);
    c.check(std::string("asymptotics.projection_limit_") + name,
            t.final_error() <= 1e-4 * t.f_norm && t.eventually_monotone(),
            "final " + format_double(t.final_error()) + ", monotone " + (t.eventually_monotone() ? "yes" : "no"));
  }

  double contour = 0.0;
  for (double r : {10.0, 30.0, 100.0}) {
    const StateVector a = radial_integral_contour(s, 0, r);
    const StateVector b = radial_integral_direct(s, 0, r);
    contour = std::max(contour, (a - b).norm() / b.norm());
  }
  c.value("asymptotics.contour_vs_direct", contour, 1e-6);

  DecayOptions opts;
  opts.ahat_max_radius = cfg.ahat_max_radius;
  opts.kappa = cfg.kappa;
  const AsymptoticsReport rep = decay_report(s, config_directions(cfg, s.total_spin()), config_radii(cfg), opts);
  const auto& ref = rep.per_direction[rep.reference_direction];
  c.check("asymptotics.density_exponent", std::abs(rep.density_exponent + 5.0) <= 0.2,
          format_double(rep.density_exponent) + " vs -5 +- 0.2");
  double flat = 0.0, lemma = -1e300;
  const double smax = s.total_spin().norm();
  for (const auto& pd : rep.per_direction) {
    if (pd.cross_norm >= 0.1 * smax) flat = std::max(flat, std::abs(pd.scaled_fit.slope));
    else flat = std::max(flat, pd.scaled_fit.slope);  // along S the scaled norm may only decay
    if (pd.lemma_fit.points >= 2) lemma = std::max(lemma, pd.lemma_fit.slope);
  }
  c.value("asymptotics.scaled_b_plateau", flat, 0.05);
  if (rep.radii.back() >= 1e3 && rep.radii.front() <= 10.0 && cfg.ahat_max_radius >= 1e3)
    c.value("asymptotics.error_lemma_exponent", lemma, -2.7);
  c.value("asymptotics.limit_prediction", ref.prediction_error, 0.02);
  c.check("asymptotics.limit_direction", ref.cosine >= 0.999, "cosine " + format_double(ref.cosine));
  if (cfg.explicit_directions.empty() && rep.per_direction.size() >= 2) {
    const double ratio = rep.per_direction[0].limit_norm / rep.per_direction[1].limit_norm;
    c.value("asymptotics.fewer_along_spin", ratio, 0.01);
  }
}

}  // namespace

VerifySummary run_verify(const RunConfig& cfg, std::ostream& log) {
  Checker c(log);
  Rng rng(cfg.seed);
  c.guarded("fock.algebra", [&] { verify_fock_algebra(c, rng); });
  c.guarded("spin.algebra", [&] { verify_spin(c); });
  std::shared_ptr<const AssembledModel> model;
  c.guarded("hamiltonian.assemble", [&] {
    model = build_model(cfg);
    verify_modes(c, *model);
    verify_model(c, *model);
  });
  if (model) {
    std::unique_ptr<SpectralSurrogate> s;
    c.guarded("groundstate.solve", [&] {
      s = std::make_unique<SpectralSurrogate>(SpectralSurrogate::from_model(model, surrogate_options(cfg)));
    });
    if (s) {
      c.guarded("groundstate.checks", [&] { verify_ground(c, *s, cfg.solver_tol, rng); });
      c.guarded("pullthrough.checks", [&] { verify_pullthrough(c, *s, rng); });
      c.guarded("asymptotics.checks", [&] { verify_asymptotics(c, cfg, *s, rng); });
    }
  }
  const VerifySummary sum = c.summary();
  log << sum.passed << " passed, " << sum.failed << " failed\n";
  return sum;
}

}  // namespace photontail
