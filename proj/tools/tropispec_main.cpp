#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tropispec/hadamard.hpp"
#include "tropispec/io.hpp"
#include "tropispec/kernel.hpp"
#include "tropispec/maxpoly.hpp"
#include "tropispec/spectral.hpp"

namespace ts = tropispec;

namespace {

constexpr const char* kVersionTag = "tropispec-v1";

struct CommonOpts {
  std::string input;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";
};

void write_header(ts::JsonWriter& w, const std::string& command, const CommonOpts& o) {
  w.key("tool").value(kVersionTag);
  w.key("command").value(command);
  w.key("seed").value(o.seed);
  w.key("tol").value(o.tol);
}

std::string csv_header(const std::string& command, const CommonOpts& o) {
  std::string s = kVersionTag;
  s += ",command=" + command;
  s += ",seed=" + std::to_string(o.seed);
  char buf[40];
  std::snprintf(buf, sizeof(buf), ",tol=%.17g\n", o.tol);
  return s + buf;
}

void emit_certificate(ts::JsonWriter& w, const std::optional<ts::CycleCertificate>& cert) {
  if (!cert) {
    w.value("none");
    return;
  }
  w.obj_open();
  w.key("nodes").arr_open();
  for (int v : cert->nodes) w.value(v);
  w.arr_close();
  w.key("geometric_mean").value(cert->geometric_mean);
  w.obj_close();
}

void parse_range(const std::string& text, int& lo, int& hi, const char* what) {
  const auto pos = text.find(':');
  try {
    if (pos == std::string::npos) {
      lo = hi = std::stoi(text);
    } else {
      lo = std::stoi(text.substr(0, pos));
      hi = std::stoi(text.substr(pos + 1));
    }
  } catch (...) {
    throw ts::InputError(std::string(what) + ": expected \"lo:hi\" or a single integer");
  }
}

int cmd_radius(const CommonOpts& o) {
  const ts::ConeMatrix A = ts::load_matrix_file(o.input);
  const ts::RadiusResult rr = ts::bonsall_radius(A);
  const auto seq = ts::norm_root_sequence(A, 20);
  ts::JsonWriter w;
  w.obj_open();
  write_header(w, "radius", o);
  w.key("r").value(rr.r);
  w.key("certificate");
  emit_certificate(w, rr.certificate);
  w.key("norm_root_sequence").arr_open();
  for (double v : seq) w.value(v);
  w.arr_close();
  w.obj_close();
  std::cout << w.str() << "\n";
  return 0;
}

int cmd_spectrum(const CommonOpts& o, int grid) {
  const ts::ConeMatrix A = ts::load_matrix_file(o.input);
  ts::SpectrumOptions opt;
  opt.grid_points = grid;
  opt.tol = o.tol;
  opt.seed = o.seed;
  const ts::SpectrumReport rep = ts::compute_spectrum(A, opt);
  ts::JsonWriter w;
  w.obj_open();
  write_header(w, "spectrum", o);
  w.key("r").value(rep.r);
  w.key("d").value(rep.d);
  w.key("d_method").value(ts::to_string(rep.d_method));
  w.key("sigma_p").arr_open();
  for (const auto& p : rep.sigma_p) {
    w.obj_open();
    w.key("lambda").value(p.lambda);
    w.key("x").arr_open();
    for (double v : p.x.entries()) w.value(v);
    w.arr_close();
    w.obj_close();
  }
  w.arr_close();
  w.key("local_radii").arr_open();
  for (double v : rep.local_radii) w.value(v);
  w.arr_close();
  w.key("scan").arr_open();
  for (const auto& pt : rep.scan) {
    w.obj_open();
    w.key("s").value(pt.s);
    w.key("rho").value(pt.rho);
    w.key("member").value(pt.rho <= o.tol);
    w.obj_close();
  }
  w.arr_close();
  w.key("certificates").arr_open();
  for (const auto& p : rep.sigma_p)
    if (p.certificate) emit_certificate(w, p.certificate);
  w.arr_close();
  w.key("rejected").arr_open();
  for (const auto& rj : rep.rejected) {
    w.obj_open();
    w.key("lambda").value(rj.lambda);
    w.key("residual").value(rj.residual);
    w.key("class_node").value(rj.class_node);
    w.obj_close();
  }
  w.arr_close();
  w.obj_close();
  std::cout << w.str() << "\n";
  return rep.rejected.empty() ? 0 : 1;
}

int cmd_maxpoly(const CommonOpts& o, const std::string& poly) {
  const ts::ConeMatrix A = ts::load_matrix_file(o.input);
  const ts::PosPolynomial q = ts::parse_poly_list(poly);
  const ts::RadiusMapping rm = ts::verify_radius_mapping(A, q);
  const ts::RadiusMapping lm = ts::verify_lower_mapping(A, q);
  const ts::MappingReport pm = ts::verify_point_mapping(A, q);

  ts::JsonWriter w;
  w.obj_open();
  write_header(w, "maxpoly", o);
  w.key("poly").arr_open();
  for (double c : q.coeffs()) w.value(c);
  w.arr_close();
  w.key("radius_mapping").obj_open();
  w.key("lhs").value(rm.lhs);
  w.key("rhs").value(rm.rhs);
  w.key("pass").value(rm.pass);
  w.obj_close();
  w.key("lower_mapping").obj_open();
  w.key("lhs").value(lm.lhs);
  w.key("rhs").value(lm.rhs);
  w.key("pass").value(lm.pass);
  w.obj_close();
  w.key("point_mapping").obj_open();
  w.key("mapped_sigma_p").arr_open();
  for (double v : pm.lhsSet) w.value(v);
  w.arr_close();
  w.key("sigma_p_of_image").arr_open();
  for (double v : pm.rhsSet) w.value(v);
  w.arr_close();
  w.key("contains_forward").value(pm.containsForward);
  w.key("contains_backward").value(pm.containsBackward);
  w.key("equality_required").value(pm.equalityRequired);
  w.key("equality_holds").value(pm.equalityHolds);
  w.key("slack").value(pm.slack);
  w.obj_close();
  w.obj_close();
  std::cout << w.str() << "\n";

  const bool pass = rm.pass && lm.pass && pm.containsForward && pm.containsBackward &&
                    (!pm.equalityRequired || pm.equalityHolds);
  return pass ? 0 : 1;
}

int cmd_hadamard(const CommonOpts& o, const std::string& dims, const std::string& degree,
                 const std::string& ms, int trials) {
  ts::EnsembleConfig cfg;
  if (!o.input.empty()) cfg = ts::load_ensemble_json(ts::read_file(o.input));
  if (trials >= 0) cfg.trials = trials;
  cfg.masterSeed = o.seed;
  if (!dims.empty()) parse_range(dims, cfg.nMin, cfg.nMax, "--dims");
  if (!degree.empty()) parse_range(degree, cfg.degMin, cfg.degMax, "--degree");
  if (!ms.empty()) parse_range(ms, cfg.mMin, cfg.mMax, "--m");

  const auto reports = ts::ensemble_run(cfg);
  if (o.format == "csv") {
    std::string out = csv_header("hadamard", o);
    out += "seed,inequality,lhs,rhs,slack\n";
    for (const auto& rep : reports)
      for (const auto& row : rep.rows) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%llu,%s,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(row.seed), rep.name.c_str(), row.lhs, row.rhs,
                      row.slack);
        out += buf;
      }
    std::cout << out;
  } else {
    ts::JsonWriter w;
    w.obj_open();
    write_header(w, "hadamard", o);
    w.key("trials").value(cfg.trials);
    w.key("reports").arr_open();
    for (const auto& rep : reports) {
      w.obj_open();
      w.key("name").value(rep.name);
      w.key("instances").value(rep.instances);
      w.key("min_slack").value(rep.minSlack);
      w.key("equality").value(rep.equality);
      w.key("informational").value(rep.informational);
      w.key("strict_count").value(rep.strictCount);
      w.key("near_tight_count").value(rep.nearTightCount);
      w.key("ensemble_insufficient").value(rep.ensembleInsufficient);
      w.key("violations").arr_open();
      for (const auto& d : rep.violations) w.value(d);
      w.arr_close();
      w.key("seeds").arr_open();
      for (std::uint64_t s : rep.seeds) w.value(s);
      w.arr_close();
      w.obj_close();
    }
    w.arr_close();
    w.obj_close();
    std::cout << w.str() << "\n";
  }
  return ts::any_violation(reports) ? 1 : 0;
}

int cmd_kernel(const CommonOpts& o, const std::string& grids) {
  const ts::KernelSpec spec = ts::load_kernel_file(o.input);
  std::vector<int> Ns;
  std::stringstream ss(grids);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      Ns.push_back(std::stoi(tok));
    } catch (...) {
      throw ts::InputError("--grids: expected a comma-separated integer list");
    }
  }
  if (Ns.empty()) throw ts::InputError("--grids: empty list");
  const auto rows = ts::radius_refinement(spec, Ns);
  if (o.format == "json") {
    ts::JsonWriter w;
    w.obj_open();
    write_header(w, "kernel", o);
    w.key("refinement").arr_open();
    for (const auto& r : rows) {
      w.obj_open();
      w.key("N").value(r.N);
      w.key("r").value(r.r);
      w.key("d").value(r.d);
      w.key("r_delta").value(r.rDelta);
      w.key("d_delta").value(r.dDelta);
      w.obj_close();
    }
    w.arr_close();
    w.obj_close();
    std::cout << w.str() << "\n";
  } else {
    std::string out = csv_header("kernel", o);
    out += "N,r,d,r_delta,d_delta\n";
    for (const auto& r : rows) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", r.N, r.r, r.d, r.rDelta,
                    r.dDelta);
      out += buf;
    }
    std::cout << out;
  }
  return 0;
}

int cmd_approx_eig(const CommonOpts& o, double eps) {
  const ts::ConeMatrix A = ts::load_matrix_file(o.input);
  const ts::ApproxEigenvectorResult res = ts::approx_eigenvector(A, eps, o.seed);
  ts::JsonWriter w;
  w.obj_open();
  write_header(w, "approx-eig", o);
  w.key("epsilon").value(res.epsilon);
  w.key("residual").value(res.residual);
  w.key("branch").value(std::string(1, res.trace.branch));
  w.key("n").value(res.trace.n);
  w.key("N").value(res.trace.N);
  w.key("m").value(res.trace.m);
  w.key("vector").arr_open();
  for (double v : res.vector.entries()) w.value(v);
  w.arr_close();
  w.obj_close();
  std::cout << w.str() << "\n";
  return res.residual <= res.epsilon ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropispec: spectral analysis of max-times and plus-times cone operators"};
  app.require_subcommand(1);

  CommonOpts common;
  int gridPoints = 21;
  std::string poly, dims, degree, ms, grids = "8,16,32";
  int trials = -1;
  double eps = 0.1;

  auto add_common = [&](CLI::App* sub, bool needInput) {
    auto* in = sub->add_option("--input", common.input, "input file (JSON)");
    if (needInput) in->required();
    sub->add_option("--seed", common.seed, "deterministic seed");
    sub->add_option("--tol", common.tol, "tolerance echoed in reports and used for flags");
    sub->add_option("--format", common.format, "output format: json or csv");
  };

  auto* radius = app.add_subcommand("radius", "Bonsall cone spectral radius with certificate");
  add_common(radius, true);

  auto* spectrum = app.add_subcommand("spectrum", "full spectrum report");
  add_common(spectrum, true);
  spectrum->add_option("--grid", gridPoints, "residual scan grid points");

  auto* maxpoly = app.add_subcommand("maxpoly", "maxpolynomial spectral mapping checks");
  add_common(maxpoly, true);
  maxpoly->add_option("--poly", poly, "coefficients a0,a1,...")->required();

  auto* hadamard = app.add_subcommand("hadamard", "Hadamard product inequality ensemble");
  add_common(hadamard, false);
  hadamard->add_option("--trials", trials, "trial count");
  hadamard->add_option("--dims", dims, "matrix dimension range lo:hi");
  hadamard->add_option("--degree", degree, "polynomial degree range lo:hi");
  hadamard->add_option("--m", ms, "Hadamard factor count range lo:hi");

  auto* kernel = app.add_subcommand("kernel", "kernel operator refinement table");
  add_common(kernel, true);
  kernel->add_option("--grids", grids, "comma-separated grid sizes");

  auto* approxEig = app.add_subcommand("approx-eig", "constructive approximate eigenvector");
  add_common(approxEig, true);
  approxEig->add_option("--eps", eps, "residual bound in (0,1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (common.format != "json" && common.format != "csv")
      throw ts::InputError("--format must be json or csv");
    if (radius->parsed()) return cmd_radius(common);
    if (spectrum->parsed()) return cmd_spectrum(common, gridPoints);
    if (maxpoly->parsed()) return cmd_maxpoly(common, poly);
    if (hadamard->parsed()) return cmd_hadamard(common, dims, degree, ms, trials);
    if (kernel->parsed()) {
      if (kernel->get_option("--format")->count() == 0) common.format = "csv";
      return cmd_kernel(common, grids);
    }
    if (approxEig->parsed()) return cmd_approx_eig(common, eps);
  } catch (const ts::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return 1;
  } catch (const ts::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
