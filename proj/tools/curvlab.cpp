// curvlab: command-line front end for the curvature-tensor library.
//
// Exit codes: 0 success, 1 for I/O, parse and usage errors, 2 when the tensor is
// rejected on mathematical grounds.

#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvlab/curvature.hpp"
#include "curvlab/distribution.hpp"
#include "curvlab/error.hpp"
#include "curvlab/io.hpp"
#include "curvlab/isotropy.hpp"
#include "curvlab/kahler.hpp"
#include "curvlab/suite.hpp"

using namespace curvlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitRejected = 2;

bool is_rejection(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotKahler:
    case ErrorCode::NotAlmostIsotropic:
    case ErrorCode::StructureViolation:
    case ErrorCode::NoDominantEigenvalue:
    case ErrorCode::InconsistentKappa:
    case ErrorCode::InconsistentTau:
    case ErrorCode::SignResolutionFailure:
      return true;
    default:
      return false;
  }
}

struct Common {
  std::string format = "text";
  double tol = 0.0;  // 0 = use CURVLAB_TOL or the library default
};

double resolve_tol(const Common& c) { return c.tol > 0.0 ? c.tol : io::default_tolerance(); }

int emit(const io::Report& report, const Common& c, int code) {
  std::cout << (c.format == "json" ? report.render_json() + "\n" : report.render_text());
  return code;
}

// Runs `body`, converting library errors into a report with the mapped exit code.
template <typename Body>
int run(const std::string& command, const Common& c, Body&& body) {
  io::Report report(command);
  try {
    return emit(report, c, body(report));
  } catch (const Error& e) {
    const bool rejected = is_rejection(e.code());
    report.fail(rejected ? "rejected" : "error", std::string(to_string(e.code())));
    report.set("detail", e.what());
    std::cerr << "curvlab " << command << ": " << e.what() << '\n';
    return emit(report, c, rejected ? kExitRejected : kExitIo);
  } catch (const std::exception& e) {
    report.fail("error", "IoError");
    report.set("detail", e.what());
    std::cerr << "curvlab " << command << ": " << e.what() << '\n';
    return emit(report, c, kExitIo);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw Error(ErrorCode::ParseError, "bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

/// "J" | "zero" | "random:SEED" | "blocks:m1,m2,..." | path to a matrix file.
SkewEndomorphism resolve_skew(const std::string& spec, int dim) {
  if (spec == "J") return SkewEndomorphism(standard_complex_structure(dim).matrix());
  if (spec == "zero") return SkewEndomorphism::zero(dim);
  if (spec.rfind("random:", 0) == 0) {
    const std::string seed = spec.substr(7);
    if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos) {
      throw Error(ErrorCode::ParseError, "random seed must be a nonnegative integer");
    }
    return random_skew(dim, std::stoull(seed));
  }
  if (spec.rfind("blocks:", 0) == 0) return block_skew(dim, parse_list(spec.substr(7)));
  const Matrix m = io::load_matrix(spec);
  if (m.rows() != dim) throw Error(ErrorCode::ParseError, "matrix file dimension differs from --dim");
  try {
    return SkewEndomorphism(m);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

ComplexStructure resolve_j(const std::string& spec, int dim) {
  if (spec == "standard") return standard_complex_structure(dim);
  try {
    return ComplexStructure(io::load_matrix(spec));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IoError || e.code() == ErrorCode::ParseError) throw;
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json subspace_json(const Subspace& w) {
  json out = json::array();
  for (int i = 0; i < w.dim(); ++i) out.push_back(io::matrix_to_json(w.vector(i).transpose())[0]);
  return out;
}

void describe_class(const KahlerClass& cls, io::Report& report) {
  report.set("case", case_number(cls));
  std::visit(
      [&report](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, KahlerCase1>) {
          report.set("kappa", c.kappa);
        } else if constexpr (std::is_same_v<T, KahlerCase2>) {
          report.set("kappa", c.kappa);
          report.set("tau", c.tau);
          report.set("mu1", c.mu1);
          report.set("mu2", c.mu2);
          report.set("W1", subspace_json(c.w1));
          report.set("W2", subspace_json(c.w2));
        } else if constexpr (std::is_same_v<T, KahlerCase3>) {
          report.set("kappa", c.kappa);
          report.set("tau", c.tau);
          report.set("mu", c.mu);
        } else {
          report.set("kappa", 0.0);
          report.set("c", c.c);
          report.set("W", subspace_json(c.w));
        }
      },
      cls);
}

void add_common(CLI::App* cmd, Common& c, bool with_tol = true) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  if (with_tol) {
    cmd->add_option("--tol", c.tol, "Relative tolerance (default: CURVLAB_TOL or 1e-9)")
        ->check(CLI::PositiveNumber);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"curvlab: almost isotropic curvature tensors"};
  app.require_subcommand(1);

  // generate
  Common gen_common;
  int gen_dim = 0;
  double gen_kappa = 0.0;
  int gen_tau = 0;
  std::string gen_a = "zero";
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write kappa R_1 + tau R_A to a tensor file");
  gen->add_option("--dim", gen_dim, "Dimension")->required()->check(CLI::Range(2, 64));
  gen->add_option("--kappa", gen_kappa, "Isotropy constant")->required();
  gen->add_option("--tau", gen_tau, "-1, 0 or 1")->required();
  gen->add_option("--A", gen_a, "J | zero | random:SEED | blocks:m1,m2,... | matrix file");
  gen->add_option("--out", gen_out, "Output tensor file")->required();
  add_common(gen, gen_common, false);

  // classify
  Common cls_common;
  std::string cls_path;
  std::string cls_j = "standard";
  auto* cls = app.add_subcommand("classify", "Kähler classification of a tensor file");
  cls->add_option("tensor", cls_path, "Tensor file")->required();
  cls->add_option("--J", cls_j, "standard | matrix file");
  add_common(cls, cls_common);

  // decompose
  Common dec_common;
  std::string dec_path;
  auto* dec = app.add_subcommand("decompose", "Recover (kappa, tau, A) from a tensor file");
  dec->add_option("tensor", dec_path, "Tensor file")->required();
  add_common(dec, dec_common);

  // fit-distribution
  Common fit_common;
  std::string fit_path;
  auto* fit = app.add_subcommand("fit-distribution", "Fit a skew projective class to distribution samples");
  fit->add_option("samples", fit_path, "Samples file")->required();
  add_common(fit, fit_common, false);

  // sample-distribution
  Common smp_common;
  int smp_dim = 0;
  std::string smp_a = "J";
  int smp_n = 40;
  std::uint64_t smp_seed = 1;
  std::string smp_out;
  auto* smp = app.add_subcommand("sample-distribution", "Write samples of D[A] to a samples file");
  smp->add_option("--dim", smp_dim, "Dimension")->required()->check(CLI::Range(2, 64));
  smp->add_option("--A", smp_a, "J | random:SEED | blocks:m1,m2,... | matrix file");
  smp->add_option("--n", smp_n, "Number of sphere points")->check(CLI::NonNegativeNumber);
  smp->add_option("--seed", smp_seed, "Sampling seed");
  smp->add_option("--out", smp_out, "Output samples file")->required();
  add_common(smp, smp_common, false);

  // lemma-suite
  Common suite_common;
  std::vector<int> suite_dims{4, 6};
  int suite_trials = 20;
  std::uint64_t suite_seed = 7;
  auto* suite = app.add_subcommand("lemma-suite", "Run the seeded property suites");
  suite->add_option("--dims", suite_dims, "Comma-separated dimensions")->delimiter(',')->check(CLI::Range(2, 16));
  suite->add_option("--trials", suite_trials, "Trials per dimension")->check(CLI::PositiveNumber);
  suite->add_option("--seed", suite_seed, "Seed");
  add_common(suite, suite_common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitIo;
  }

  if (*gen) {
    return run("generate", gen_common, [&](io::Report& report) {
      const SkewEndomorphism a = resolve_skew(gen_a, gen_dim);
      const CurvatureTensor r = build_model(gen_kappa, gen_tau, a);
      io::save_tensor(r, gen_out);
      const double sigma = a.is_zero() ? 0.0 : Eigen::JacobiSVD<Matrix>(a.matrix()).singularValues()(0);
      const double far = gen_kappa + 3.0 * gen_tau * sigma * sigma;
      report.set("dim", gen_dim);
      report.set("kappa", gen_kappa);
      report.set("tau", gen_tau);
      report.set("A", io::matrix_to_json(a.matrix()));
      report.set("lambda_range", json::array({std::min(gen_kappa, far), std::max(gen_kappa, far)}));
      report.set("output", gen_out);
      report.set("output_digest", io::file_digest(gen_out));
      return kExitOk;
    });
  }

  if (*cls) {
    return run("classify", cls_common, [&](io::Report& report) {
      const double tol = resolve_tol(cls_common);
      report.set("input_digest", io::file_digest(cls_path));
      report.set("tol", tol);
      const CurvatureTensor r = io::load_tensor(cls_path, tol);
      const ComplexStructure j = resolve_j(cls_j, r.dim());
      if (j.dim() != r.dim()) throw Error(ErrorCode::ParseError, "J dimension differs from the tensor");
      describe_class(classify_kahler(r, j, tol), report);
      return kExitOk;
    });
  }

  if (*dec) {
    return run("decompose", dec_common, [&](io::Report& report) {
      const double tol = resolve_tol(dec_common);
      report.set("input_digest", io::file_digest(dec_path));
      report.set("tol", tol);
      const CurvatureTensor r = io::load_tensor(dec_path, tol);
      const Decomposition d = recover_decomposition(r, tol);
      report.set("kappa", d.kappa);
      report.set("tau", d.tau);
      report.set("A", io::matrix_to_json(d.a.matrix()));
      report.set("residual", d.residual);
      report.check("residual below tolerance", d.residual <= tol);
      return kExitOk;
    });
  }

  if (*fit) {
    return run("fit-distribution", fit_common, [&](io::Report& report) {
      report.set("input_digest", io::file_digest(fit_path));
      const FitResult f = fit_skew_from_samples(io::load_samples(fit_path));
      report.set("A", io::matrix_to_json(f.a.matrix()));
      report.set("residual", f.residual);
      report.set("gap", f.gap);
      report.set("unique", f.gap >= 1e-8);
      return kExitOk;
    });
  }

  if (*smp) {
    return run("sample-distribution", smp_common, [&](io::Report& report) {
      const SkewEndomorphism a = resolve_skew(smp_a, smp_dim);
      io::save_samples(sample_distribution(a, smp_n, smp_seed), smp_out);
      report.set("dim", smp_dim);
      report.set("entries", smp_n);
      report.set("output", smp_out);
      report.set("output_digest", io::file_digest(smp_out));
      return kExitOk;
    });
  }

  if (*suite) {
    return run("lemma-suite", suite_common, [&](io::Report& report) {
      SuiteOptions options;
      options.dims = suite_dims;
      options.trials = suite_trials;
      options.seed = suite_seed;
      const std::vector<SuiteRow> rows = run_lemma_suite(options);
      json table = json::array();
      for (const SuiteRow& row : rows) {
        table.push_back(json{{"module", row.module},
                             {"property", row.property},
                             {"trials", row.trials},
                             {"worst", row.worst},
                             {"threshold", row.threshold},
                             {"pass", row.pass}});
        report.check(row.module + ": " + row.property, row.pass);
      }
      report.set("dims", suite_dims);
      report.set("trials", suite_trials);
      report.set("seed", suite_seed);
      if (suite_common.format == "json") report.set("rows", table);
      if (suite_common.format == "text") {
        for (const SuiteRow& row : rows) {
          std::cout << std::left << std::setw(20) << row.module << std::setw(64) << row.property << std::right
                    << std::setw(6) << row.trials << std::setw(14) << std::scientific << std::setprecision(3)
                    << row.worst << "  " << (row.pass ? "pass" : "FAIL") << '\n';
        }
        std::cout << std::defaultfloat;
      }
      const bool ok = report.all_checks_pass();
      if (!ok) report.fail("failed", "one or more properties failed");
      return ok ? kExitOk : kExitRejected;
    });
  }
  return kExitIo;
}
