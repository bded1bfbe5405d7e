#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <map>

#include "oracles.hpp"
#include "relpow/fracderiv.hpp"
#include "relpow/semigroup.hpp"
#include "relpow/verify.hpp"

using namespace relpow;
using namespace relpow::testing;

namespace {

void verdict(int criterion, bool ok, const char* what) {
  std::printf("criterion %d: %s  (%s)\n", criterion, ok ? "pass" : "FAIL",
              what);
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion " << criterion << ": " << what);
}

std::vector<ProblemSpec> algebraic_instances() {
  std::vector<ProblemSpec> out;
  out.push_back(diag_spec());
  out.push_back(pencil_spec());
  Mat Csing = Mat::Zero(2, 2);
  Csing(0, 0) = 1.0;
  out.push_back(make_spec(singular_pencil(), Csing, hs_region()));

  std::mt19937 rng(1234);
  for (int k = 0; k < 3; ++k) {
    std::vector<Complex> eigs;
    Mat M = random_stable_matrix(rng, eigs, 4);
    out.push_back(make_spec(LinearRelation::from_matrix(M),
                            Mat::Identity(4, 4), hs_region()));
  }
  for (int k = 0; k < 2; ++k) {
    Mat B = Mat::Identity(4, 4), L = Mat::Zero(4, 4);
    B(3, 3) = 0.0;
    for (int i = 0; i < 4; ++i) L(i, i) = -(1.0 + i + 0.3 * k);
    // The anchor point must avoid the pencil eigenvalues -(1 + i + 0.3k).
    RegionParams reg = hs_region();
    reg.lambda0 = Complex(-2.5, 0.0);
    out.push_back(make_spec(LinearRelation::from_pencil(B, L),
                            Mat::Identity(4, 4), reg));
  }
  return out;
}

// The per-identity pass tolerances used for both the positive runs and
// the perturbed negative controls.
const std::map<std::string, double>& tolerances() {
  static const std::map<std::string, double> kTols = {
      {"resolvent_eq", 1e-8}, {"creso", 1e-8},
      {"genres_i", 1e-8},     {"genres_ii", 1e-8},
      {"resequ", 1e-8},       {"klim", 1e-8},
      {"homomorphism", 5e-6}, {"power_add", 5e-6},
      {"residue", 1e-6},      {"s_inclusions", 1e-6},
      {"sg_law", 1e-5},       {"sg_limit", 5e-4},
      {"sg_commute", 1e-5},   {"subgen_AB", 1e-5},
      {"qzero", 1e-8},        {"an_membership", 1e-5},
      {"frac_deriv", 1e-4},   {"second_order", 1e-4},
      {"laplace", 1e-5},
  };
  return kTols;
}

} // namespace

TEST_CASE("criterion 1: algebraic identity suite across instances") {
  const char* ids[] = {"resolvent_eq", "creso",  "genres_i",
                       "genres_ii",    "resequ", "klim"};
  VerifyOptions opts;
  opts.samples = 3;
  bool ok = true;
  for (const ProblemSpec& spec : algebraic_instances()) {
    // Spectra must be certified outside the region first.
    RegionCertificate cert =
        region_certify(spec.relation, spec.C, spec.region, 100.0);
    ok = ok && cert.pass;
    for (const char* id : ids) {
      ResidualReport r = verify_identity(id, spec, 1e-8, opts);
      if (!r.pass)
        std::printf("  criterion 1 detail: %s residual %.3e on a %dx%d "
                    "instance\n",
                    id, r.max_residual, spec.relation.dim(),
                    spec.relation.dim());
      ok = ok && r.pass;
    }
  }
  verdict(1, ok, "algebraic identities at 1e-8 on all instances");
}

TEST_CASE("criterion 2: power routes match the eigendecomposition oracle") {
  std::vector<Complex> eigs{Complex(-1, 0), Complex(-4, 0), Complex(-9, 0)};
  Mat V(3, 3);
  V << 1.0, 0.15, 0.0, 0.1, 1.0, -0.2, 0.0, 0.1, 1.0;
  LinearRelation A =
      LinearRelation::from_matrix(Mat(V * diag_matrix(eigs) * V.inverse()));
  const RegionParams reg = hs_region();
  const Mat I3 = Mat::Identity(3, 3);
  const double tol = 1e-7;
  bool ok = true;
  for (Complex b : {Complex(0.3, 0.0), Complex(0.5, 0.2), Complex(1.7, 0.0)}) {
    Mat want = eigen_power_oracle(V, eigs, b);
    PowerSpec contour{b, PowerSpec::Route::Contour, 1};
    ok = ok && (neg_power(A, I3, reg, contour, tol) - want).norm() < 1e-5;

    Mat bala;
    if (b.real() < 1.0) {
      PowerSpec spec{b, PowerSpec::Route::Balakrishnan, 1};
      bala = neg_power(A, I3, reg, spec, tol);
    } else {
      // Split exponents outside (0,1) multiplicatively; C1 = I makes the
      // composition a plain product.
      PowerSpec half{b / 2.0, PowerSpec::Route::Balakrishnan, 1};
      Mat root = neg_power(A, I3, reg, half, tol);
      bala = root * root;
    }
    ok = ok && (bala - want).norm() < 1e-5;

    PowerSpec moment{b, PowerSpec::Route::Moment, 1};
    ok = ok && (neg_power(A, I3, reg, moment, tol) - want).norm() < 1e-5;
  }
  verdict(2, ok, "contour, splitting and moment routes within 1e-5");
}

TEST_CASE("criterion 3: route cross-consistency on the multivalued pencil") {
  LinearRelation A = singular_pencil();
  const RegionParams reg = hs_region();
  const Mat I2 = Mat::Identity(2, 2);
  bool ok = true;
  for (double b : {0.3, 0.7}) {
    PowerSpec pc{Complex(b, 0), PowerSpec::Route::Contour, 1};
    PowerSpec pb{Complex(b, 0), PowerSpec::Route::Balakrishnan, 1};
    PowerSpec pm{Complex(b, 0), PowerSpec::Route::Moment, 1};
    Mat mc = neg_power(A, I2, reg, pc, 1e-7);
    Mat mb = neg_power(A, I2, reg, pb, 1e-7);
    Mat mm = neg_power(A, I2, reg, pm, 1e-7); // extra C1 factor is I here
    ok = ok && (mc - mb).norm() < 1e-5 && (mb - mm).norm() < 1e-5 &&
         (mc - mm).norm() < 1e-5;
  }
  verdict(3, ok, "three power routes agree pairwise to 1e-5");
}

TEST_CASE("criterion 4: homomorphism and additivity over random exponents") {
  ProblemSpec spec = diag_spec();
  VerifyOptions opts;
  opts.samples = 10;
  bool ok = true;
  for (const char* id : {"homomorphism", "power_add"}) {
    ResidualReport r = verify_identity(id, spec, 5e-6, opts);
    if (!r.pass)
      std::printf("  criterion 4 detail: %s residual %.3e\n", id,
                  r.max_residual);
    ok = ok && r.pass && r.samples.size() == 10;
  }
  verdict(4, ok, "10 random exponent pairs within 5x quadrature tolerance");
}

TEST_CASE("criterion 5: semigroup values and composition law") {
  VerifyOptions opts;
  ResidualReport law = verify_identity("sg_law", diag_spec(), 1e-5, opts);

  LinearRelation scalarA = diag_relation({Complex(-2, 0)});
  Mat S = evaluate_sg(scalarA, Mat::Identity(1, 1), hs_region(), 0.25,
                      Complex(1.0, 0.0), 1e-8);
  bool scalar_ok =
      std::abs(S(0, 0) - std::exp(-std::pow(2.0, 0.25))) < 1e-5;

  LinearRelation A = diag_relation({Complex(-1, 0), Complex(-4, 0)});
  Mat H = evaluate_sg_half(A, Mat::Identity(2, 2), hs_region(),
                           Complex(1.0, 0.0), 1e-8);
  Mat wantH = Mat::Zero(2, 2);
  wantH(0, 0) = std::exp(-1.0);
  wantH(1, 1) = std::exp(-2.0);
  bool half_ok = (H - wantH).norm() < 1e-5;

  if (!law.pass)
    std::printf("  criterion 5 detail: sg_law residual %.3e\n",
                law.max_residual);
  verdict(5, law.pass && scalar_ok && half_ok,
          "sg_law grid, scalar value and half-power diagonal");
}

TEST_CASE("criterion 6: membership suite on the pencil instance") {
  ProblemSpec spec = pencil_spec();
  VerifyOptions opts;
  opts.samples = 2;
  bool ok = true;
  for (const char* id :
       {"qzero", "an_membership", "second_order", "sg_commute",
        "subgen_AB"}) {
    ResidualReport r = verify_identity(id, spec, tolerances().at(id), opts);
    if (!r.pass)
      std::printf("  criterion 6 detail: %s residual %.3e\n", id,
                  r.max_residual);
    ok = ok && r.pass;
  }
  verdict(6, ok, "kernel moments and membership identities on the pencil");
}

TEST_CASE("criterion 7: fractional derivative suite") {
  const double a = 2.0, s = 1.0;
  DecayingMap u{[a](double t) {
                  Vec v(1);
                  v(0) = std::exp(-a * t);
                  return v;
                },
                a, 1.0};
  bool eig_ok = true;
  for (double beta : {0.5, 1.3, 2.7}) {
    Vec got = liouville_right_deriv(u, beta, s, 1e-10);
    double want = std::pow(a, beta) * std::exp(-a * s);
    eig_ok = eig_ok && std::abs(got(0) - want) < 1e-5 * want;
  }

  VerifyOptions opts;
  opts.gamma = 0.25;
  ResidualReport r = verify_identity("frac_deriv", diag_spec(), 1e-4, opts);
  if (!r.pass)
    std::printf("  criterion 7 detail: frac_deriv residual %.3e\n",
                r.max_residual);
  verdict(7, eig_ok && r.pass,
          "eigenfunction property and derivative identity");
}

TEST_CASE("criterion 8: truncated Laplace transform of S_{1/2}") {
  ResidualReport r = verify_identity("laplace", diag_spec(), 1e-5);
  if (!r.pass)
    std::printf("  criterion 8 detail: laplace residual %.3e\n",
                r.max_residual);
  verdict(8, r.pass, "time integral matches F_{1/2} at lambda = 1, 2");
}

TEST_CASE("criterion 9: perturbed instances fail every suite") {
  ProblemSpec spec = diag_spec();
  VerifyOptions opts;
  opts.samples = 2;
  opts.perturbation = 1e-2;
  bool ok = true;
  for (const auto& [id, tol] : tolerances()) {
    ResidualReport r = verify_identity(id, spec, tol, opts);
    bool detected = r.max_residual > 10.0 * tol;
    if (!detected)
      std::printf("  criterion 9 detail: %s residual %.3e at tol %.1e\n",
                  id.c_str(), r.max_residual, tol);
    ok = ok && detected;
  }
  verdict(9, ok, "1e-2 perturbation pushes residuals past 10x tolerance");
}

TEST_CASE("criterion 10: reports are byte-for-byte deterministic") {
  ProblemSpec spec = diag_spec();
  VerifyOptions opts;
  opts.samples = 2;
  const char* ids[] = {"resolvent_eq", "creso", "residue", "qzero",
                       "sg_law"};
  std::string first, second;
  for (int run = 0; run < 2; ++run) {
    std::vector<ResidualReport> reports;
    for (const char* id : ids)
      reports.push_back(verify_identity(id, spec, tolerances().at(id), opts));
    (run == 0 ? first : second) = reports_to_json(reports);
  }
  verdict(10, !first.empty() && first == second,
          "identical seed gives identical report bytes");
}
