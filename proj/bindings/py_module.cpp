#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropispec/hadamard.hpp"
#include "tropispec/io.hpp"
#include "tropispec/kernel.hpp"
#include "tropispec/maxpoly.hpp"
#include "tropispec/spectral.hpp"

namespace py = pybind11;
using namespace tropispec;

namespace {

ConeMatrix make_matrix(const std::vector<std::vector<double>>& rows, const std::string& semiring) {
  return ConeMatrix(rows, semiring_from_string(semiring));
}

std::vector<std::vector<double>> matrix_rows(const ConeMatrix& M) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < M.dim(); ++i) {
    std::vector<double> r;
    for (int j = 0; j < M.dim(); ++j) r.push_back(M(i, j));
    rows.push_back(std::move(r));
  }
  return rows;
}

py::dict certificate_dict(const std::optional<CycleCertificate>& cert) {
  py::dict d;
  if (cert) {
    d["nodes"] = cert->nodes;
    d["geometric_mean"] = cert->geometric_mean;
  }
  return d;
}

py::dict report_dict(const InequalityReport& rep) {
  py::dict d;
  d["name"] = rep.name;
  d["instances"] = rep.instances;
  d["min_slack"] = rep.minSlack;
  d["violations"] = rep.violations;
  d["seeds"] = rep.seeds;
  d["equality"] = rep.equality;
  d["informational"] = rep.informational;
  d["strict_count"] = rep.strictCount;
  d["near_tight_count"] = rep.nearTightCount;
  d["ensemble_insufficient"] = rep.ensembleInsufficient;
  return d;
}

KernelSpec kernel_from_json(const std::string& text) { return load_kernel_json(text); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "spectral analysis of max-times and plus-times cone operators";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<ConeMatrix>(m, "Matrix")
      .def(py::init(&make_matrix), py::arg("rows"), py::arg("semiring") = "max-times")
      .def_property_readonly("n", &ConeMatrix::dim)
      .def_property_readonly("semiring", [](const ConeMatrix& M) { return std::string(to_string(M.semiring())); })
      .def("rows", &matrix_rows)
      .def("__repr__", [](const ConeMatrix& M) {
        return "Matrix(n=" + std::to_string(M.dim()) + ", semiring=" + to_string(M.semiring()) + ")";
      });

  m.def("load_matrix_json", &load_matrix_json, py::arg("text"));

  m.def("mat_apply", [](const ConeMatrix& A, const std::vector<double>& x) {
    return mat_apply(A, ConeVector(x)).entries();
  });
  m.def("mat_mul", &mat_mul);
  m.def("op_norm", &op_norm);
  m.def("min_modulus", &min_modulus);
  m.def("hadamard_product", &hadamard_product);
  m.def("hadamard_power", &hadamard_power);
  m.def("mat_power_norm", [](const ConeMatrix& A, std::uint64_t n) {
    return mat_power(A, n).op_norm();
  });

  m.def("bonsall_radius", [](const ConeMatrix& A) {
    const RadiusResult r = bonsall_radius(A);
    return py::make_tuple(r.r, certificate_dict(r.certificate));
  });
  m.def("lower_radius", [](const ConeMatrix& A) {
    const LowerRadiusResult r = lower_radius(A);
    return py::make_tuple(r.d, std::string(to_string(r.method)));
  });
  m.def("point_spectrum", [](const ConeMatrix& A) {
    py::list out;
    for (const auto& p : point_spectrum(A)) out.append(py::make_tuple(p.lambda, p.x.entries()));
    return out;
  });
  m.def("norm_root_sequence", &norm_root_sequence, py::arg("A"), py::arg("K") = 20);
  m.def("min_modulus_root_sequence", &min_modulus_root_sequence, py::arg("A"), py::arg("K") = 20);
  m.def("local_radius", [](const ConeMatrix& A, const std::vector<double>& x, int K) {
    return local_radius(A, ConeVector(x), K);
  }, py::arg("A"), py::arg("x"), py::arg("K") = 20);
  m.def("ap_residual", [](const ConeMatrix& A, double s, int restarts, std::uint64_t seed) {
    const ApResidualResult r = ap_residual(A, s, restarts, seed);
    return py::make_tuple(r.rho, r.argmin.entries());
  }, py::arg("A"), py::arg("s"), py::arg("restarts") = 32, py::arg("seed") = 0);
  m.def("ap_scan", [](const ConeMatrix& A, int gridPoints, double tol, std::uint64_t seed) {
    py::list out;
    for (const auto& pt : ap_scan(A, gridPoints, tol, seed)) out.append(py::make_tuple(pt.s, pt.rho));
    return out;
  }, py::arg("A"), py::arg("grid_points") = 21, py::arg("tol") = 1e-9, py::arg("seed") = 0);
  m.def("approx_eigenvector", [](const ConeMatrix& A, double eps, std::uint64_t seed) {
    const auto r = approx_eigenvector(A, eps, seed);
    py::dict d;
    d["vector"] = r.vector.entries();
    d["epsilon"] = r.epsilon;
    d["residual"] = r.residual;
    d["n"] = r.trace.n;
    d["N"] = r.trace.N;
    d["m"] = r.trace.m;
    d["branch"] = std::string(1, r.trace.branch);
    return d;
  }, py::arg("A"), py::arg("eps"), py::arg("seed") = 0);
  m.def("brute_force_oracle", [](const ConeMatrix& A, int gridResolution) {
    const SpectrumReport rep = brute_force_oracle(A, gridResolution);
    py::dict d;
    d["r"] = rep.r;
    d["d"] = rep.d;
    py::list sp;
    for (const auto& p : rep.sigma_p) sp.append(py::make_tuple(p.lambda, p.x.entries()));
    d["sigma_p"] = sp;
    return d;
  }, py::arg("A"), py::arg("grid_resolution") = 40);

  m.def("eval_scalar", [](const std::vector<double>& coeffs, double t) {
    return eval_scalar(PosPolynomial(coeffs), t);
  });
  m.def("eval_operator", [](const std::vector<double>& coeffs, const ConeMatrix& A) {
    return eval_operator(PosPolynomial(coeffs), A);
  });
  m.def("power_coeffs", [](const std::vector<double>& coeffs, int mm) {
    return power_coeffs(PosPolynomial(coeffs), mm).coeffs();
  });
  m.def("verify_radius_mapping", [](const ConeMatrix& A, const std::vector<double>& coeffs) {
    const auto r = verify_radius_mapping(A, PosPolynomial(coeffs));
    return py::make_tuple(r.lhs, r.rhs, r.pass);
  });
  m.def("verify_lower_mapping", [](const ConeMatrix& A, const std::vector<double>& coeffs) {
    const auto r = verify_lower_mapping(A, PosPolynomial(coeffs));
    return py::make_tuple(r.lhs, r.rhs, r.pass);
  });
  m.def("verify_point_mapping", [](const ConeMatrix& A, const std::vector<double>& coeffs) {
    const auto r = verify_point_mapping(A, PosPolynomial(coeffs));
    py::dict d;
    d["mapped_sigma_p"] = r.lhsSet;
    d["sigma_p_of_image"] = r.rhsSet;
    d["contains_forward"] = r.containsForward;
    d["contains_backward"] = r.containsBackward;
    d["equality_required"] = r.equalityRequired;
    d["equality_holds"] = r.equalityHolds;
    d["slack"] = r.slack;
    return d;
  });

  m.def("cyclic_products", &cyclic_products);
  m.def("verify_cor53", [](const std::vector<ConeMatrix>& As) {
    py::list out;
    for (const auto& rep : verify_cor53(As)) out.append(report_dict(rep));
    return out;
  });
  m.def("verify_thm55", [](const std::vector<double>& coeffs, const std::vector<ConeMatrix>& As) {
    py::list out;
    for (const auto& rep : verify_thm55(PosPolynomial(coeffs), As)) out.append(report_dict(rep));
    return out;
  });
  m.def("verify_thm51",
        [](const std::vector<std::vector<ConeMatrix>>& grid, const std::vector<double>& alphas) {
          py::list out;
          for (const auto& rep : verify_thm51(grid, alphas)) out.append(report_dict(rep));
          return out;
        });
  m.def("ensemble_run",
        [](int trials, std::uint64_t seed, int nMin, int nMax, int mMin, int mMax, int degMin,
           int degMax, double low, double high, double pZero) {
          EnsembleConfig cfg;
          cfg.trials = trials;
          cfg.masterSeed = seed;
          cfg.nMin = nMin;
          cfg.nMax = nMax;
          cfg.mMin = mMin;
          cfg.mMax = mMax;
          cfg.degMin = degMin;
          cfg.degMax = degMax;
          cfg.entry = {low, high, pZero};
          py::list out;
          for (const auto& rep : ensemble_run(cfg)) out.append(report_dict(rep));
          return out;
        },
        py::arg("trials") = 500, py::arg("seed") = 0, py::arg("n_min") = 2, py::arg("n_max") = 6,
        py::arg("m_min") = 1, py::arg("m_max") = 4, py::arg("deg_min") = 0, py::arg("deg_max") = 4,
        py::arg("low") = 1e-2, py::arg("high") = 1e2, py::arg("p_zero") = 0.2);

  m.def("discretize", [](const std::string& specJson, int N) {
    const DiscretizationResult D = discretize(kernel_from_json(specJson), N);
    py::dict d;
    d["N"] = D.N;
    d["matrix"] = D.matrix;
    d["nodes"] = D.nodes;
    return d;
  });
  m.def("path_norm", [](const std::string& specJson, int N, int n) {
    return path_norm(discretize(kernel_from_json(specJson), N), n);
  });
  m.def("radius_refinement", [](const std::string& specJson, const std::vector<int>& Ns) {
    py::list out;
    for (const auto& row : radius_refinement(kernel_from_json(specJson), Ns))
      out.append(py::make_tuple(row.N, row.r, row.d));
    return out;
  });
}
