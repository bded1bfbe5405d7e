#include "relpow/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "json.hpp"
#include "relpow/fracderiv.hpp"
#include "relpow/powers.hpp"
#include "relpow/semigroup.hpp"

namespace relpow {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kFailResidual = 1e300;

double halton(unsigned long i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

// Deterministic low-discrepancy stream: each draw advances one index,
// each slot uses a distinct prime base.
struct Sampler {
  unsigned long index;
  explicit Sampler(unsigned seed) : index(seed % 997 + 13) {}
  static constexpr unsigned kBases[6] = {2, 3, 5, 7, 11, 13};

  double u(int slot) const { return halton(index, kBases[slot % 6]); }
  void advance() { ++index; }

  Complex region_point(const RegionParams& p, int slot) const {
    if (p.mode == RegionParams::Mode::HS) {
      double r = 0.5 * p.d * std::pow(40.0 / p.d, u(slot));
      double phi = 0.9 * p.theta * (2.0 * u(slot + 1) - 1.0);
      return std::polar(r, phi);
    }
    double xi = p.eps + 19.0 * u(slot) * u(slot);
    double eta =
        0.9 * p.c * std::pow(1.0 + xi, -p.alpha) * (2.0 * u(slot + 1) - 1.0);
    return Complex(xi, eta);
  }

  Vec vector(int n, int slot) const {
    Vec x(n);
    for (int i = 0; i < n; ++i)
      x(i) = Complex(2.0 * halton(index, kBases[slot % 6]) - 1.0 + 0.1 * i,
                     2.0 * halton(index + 7 * (i + 1), kBases[(slot + 1) % 6]) -
                         1.0);
    double nx = x.norm();
    return nx > 0 ? Vec(x / nx) : x;
  }

  // Coefficient-combination of basis columns; returns zero vector when
  // the basis is empty.
  Vec in_span(const Mat& basis, int slot) const {
    if (basis.cols() == 0) return Vec::Zero(basis.rows());
    Vec c = vector(static_cast<int>(basis.cols()), slot);
    Vec x = basis * c;
    double nx = x.norm();
    return nx > 0 ? Vec(x / nx) : x;
  }
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(Complex z) { return fmt(z.real()) + "," + fmt(z.imag()); }

// Working context: the primary instance plus a (possibly perturbed)
// secondary copy. Every identity evaluates one designated side on the
// secondary objects, so a nonzero perturbation is detectable.
struct Ctx {
  LinearRelation A;
  LinearRelation A2;
  Mat C, C2;
  Mat C1, C1b;
  RegionParams region;
  double gamma, gamma2;
  double tol;
  double qtol; // quadrature budget, one decade below the pass threshold
  int nsamples;
  Sampler sampler;

  Ctx(const ProblemSpec& spec, double tol_, const VerifyOptions& opts)
      : A(spec.relation),
        A2(perturb(spec.relation, opts)),
        C(spec.C),
        C2(perturb_mat(spec.C, opts)),
        C1(build_c1(A, C, spec.region)),
        C1b(build_c1(A2, C2, spec.region)),
        region(spec.region),
        gamma(opts.gamma),
        gamma2(opts.gamma + opts.perturbation),
        tol(tol_),
        qtol(tol_ / 10.0),
        nsamples(opts.samples),
        sampler(opts.seed) {}

  static LinearRelation perturb(const LinearRelation& A,
                                const VerifyOptions& opts) {
    if (opts.perturbation == 0.0) return A;
    Mat G = A.graph();
    for (Eigen::Index r = 0; r < G.rows(); ++r)
      for (Eigen::Index c = 0; c < G.cols(); ++c)
        G(r, c) += opts.perturbation *
                   Complex(2.0 * halton(17 + 3 * r + 5 * c, 2) - 1.0,
                           2.0 * halton(17 + 3 * r + 5 * c, 3) - 1.0);
    return LinearRelation::from_graph(G);
  }

  static Mat perturb_mat(const Mat& C, const VerifyOptions& opts) {
    if (opts.perturbation == 0.0) return C;
    Mat D = C;
    for (Eigen::Index r = 0; r < D.rows(); ++r)
      for (Eigen::Index c = 0; c < D.cols(); ++c)
        D(r, c) += opts.perturbation *
                   Complex(2.0 * halton(29 + 7 * r + 11 * c, 2) - 1.0,
                           2.0 * halton(29 + 7 * r + 11 * c, 5) - 1.0);
    return D;
  }

  // Chain (x, y_1, ..., y_k) through the relation R: consecutive pairs
  // belong to R. Returned as columns x, y_1, ..., y_k.
  Mat chain(const LinearRelation& R, int k, int slot) const {
    const int n = R.dim();
    const Mat P = R.first_components(), Q = R.second_components();
    // Null space of the stacked matching conditions Q a_j = P a_{j+1}
    // on the coefficient blocks (a_1, ..., a_k).
    const auto m = P.cols();
    Mat cond((k - 1) * n, k * m);
    cond.setZero();
    for (int j = 0; j + 1 < k; ++j) {
      cond.block(j * n, j * m, n, m) = Q;
      cond.block(j * n, (j + 1) * m, n, m) = -P;
    }
    Mat N = k == 1 ? Mat(Mat::Identity(m, m)) : null_space(cond);
    if (N.cols() == 0) return Mat(n, 0);
    Vec c = sampler.vector(static_cast<int>(N.cols()), slot);
    Mat out(n, k + 1);
    out.col(0) = P * N.topRows(m) * c;
    for (int j = 0; j < k; ++j)
      out.col(j + 1) = Q * N.middleRows(j * m, m) * c;
    double nx = out.norm();
    if (nx > 0) out /= nx;
    return out;
  }

  Mat cres(const LinearRelation& R, const Mat& reg, Complex lam) const {
    return c_resolvent(R, reg, lam);
  }

  LinearRelation sandwich(const LinearRelation& mid) const {
    const LinearRelation c1rel = LinearRelation::from_matrix(C1);
    return compose(inverse(c1rel), compose(mid, c1rel));
  }
};

using IdentityFn = std::function<void(Ctx&, ResidualReport&)>;

void push(ResidualReport& rep, std::string digest, double residual,
          std::string note = "") {
  const bool ok = residual < kFailResidual; // NaN and the sentinel both fail
  rep.samples.push_back({std::move(digest), residual, ok, std::move(note)});
}

// ---- algebraic identities -------------------------------------------

void id_resolvent_eq(Ctx& c, ResidualReport& rep) {
  const Mat CC = c.C * c.C;
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    Complex lam = c.sampler.region_point(c.region, 0);
    Complex mu = c.sampler.region_point(c.region, 2);
    if (std::abs(lam - mu) < 1e-3) mu += Complex(0.0, 2e-3);
    Mat lhs = c.cres(c.A2, CC, lam) - c.cres(c.A, CC, mu);
    Mat rhs = (mu - lam) * c.cres(c.A2, c.C, lam) * c.cres(c.A, c.C, mu);
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "lambda=" + fmt(lam) + ";mu=" + fmt(mu), r);
  }
}

// Cauchy-circle derivative of the resolvent versus the iterated solve.
void id_creso(Ctx& c, ResidualReport& rep) {
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    Complex lam = c.sampler.region_point(c.region, 0);
    const int n = 2 + (s % 2);
    const double radius = 0.15 * std::max(std::abs(lam), c.region.d);
    const int nodes = 64;
    Mat deriv = Mat::Zero(c.A.dim(), c.A.dim());
    for (int j = 0; j < nodes; ++j) {
      double phi = 2.0 * kPi * j / nodes;
      Complex z = lam + radius * std::exp(kI * phi);
      // d^{n-1}/dlambda^{n-1} F = (n-1)!/(2 pi i) of F(z)/(z-lam)^n;
      // trapezoid on the circle is exact to spectral accuracy.
      deriv += c.cres(c.A2, c.C, z) * std::exp(kI * phi * (1.0 - n)) /
               std::pow(radius, n - 1.0) / static_cast<double>(nodes);
    }
    deriv *= std::tgamma(static_cast<double>(n));
    Mat ref = std::pow(-1.0, n - 1) * std::tgamma(static_cast<double>(n)) *
              resolvent_power(c.A, c.C, lam, n);
    double r = (deriv - ref).norm() / (1.0 + ref.norm());
    push(rep, "lambda=" + fmt(lam) + ";n=" + std::to_string(n), r);
  }
}

void id_genres_i(Ctx& c, ResidualReport& rep) {
  const int k = 2;
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    Complex z = c.sampler.region_point(c.region, 0);
    Complex lam = c.sampler.region_point(c.region, 2);
    if (std::abs(z - lam) < 1e-3) lam += Complex(0.0, 2e-3);
    Mat Rlam = c.cres(c.A, c.C, lam);
    Mat Rlam_k = Rlam;
    for (int i = 1; i < k; ++i) Rlam_k = Rlam * Rlam_k;
    Mat lhs = c.cres(c.A2, c.C, z) * Rlam_k;
    Mat Ck1 = c.C;
    for (int i = 0; i < k; ++i) Ck1 = c.C * Ck1;
    Mat rhs = std::pow(-1.0, k) / std::pow(z - lam, k) *
              (c.cres(c.A2, Ck1, z));
    Mat Rpow = Mat::Identity(c.A.dim(), c.A.dim());
    for (int i = 1; i <= k; ++i) {
      Rpow = Rlam * Rpow; // ((lambda - A)^{-1} C)^i
      Mat Cpow = Mat::Identity(c.A.dim(), c.A.dim());
      for (int j = 0; j < k + 1 - i; ++j) Cpow = c.C * Cpow;
      rhs += std::pow(-1.0, k - i) / std::pow(z - lam, k + 1 - i) *
             (Rpow * Cpow);
    }
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "z=" + fmt(z) + ";lambda=" + fmt(lam) + ";k=2", r);
  }
}

void id_genres_ii(Ctx& c, ResidualReport& rep) {
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    const int k = 1 + (s % 2);
    Complex z = c.sampler.region_point(c.region, 0);
    Complex lam0 = c.region.lambda0;
    LinearRelation shifted =
        scalar_shift_mul(c.A, Complex(-1.0, 0.0), lam0);
    Mat chain = c.chain(integer_power(shifted, k), 1, 2);
    if (chain.cols() == 0) {
      push(rep, "k=" + std::to_string(k), kFailResidual, "empty relation");
      continue;
    }
    Vec x = chain.col(0), y = chain.col(1);
    Mat Ck1 = c.C;
    for (int i = 0; i < k; ++i) Ck1 = c.C * Ck1;
    Vec lhs = c.cres(c.A2, Ck1, z) * x;
    Vec rhs = std::pow(-1.0, k) / std::pow(z - lam0, k) *
              (c.cres(c.A, Ck1, z) * y);
    Mat Rlam0 = c.cres(c.A, c.C, lam0);
    Mat Rpow = Mat::Identity(c.A.dim(), c.A.dim());
    for (int i = 1; i <= k; ++i) {
      Rpow = Rlam0 * Rpow;
      Mat Cpow = Mat::Identity(c.A.dim(), c.A.dim());
      for (int j = 0; j < k + 1 - i; ++j) Cpow = c.C * Cpow;
      rhs += std::pow(-1.0, k - i) / std::pow(z - lam0, k + 1 - i) *
             (Rpow * Cpow * y);
    }
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "z=" + fmt(z) + ";k=" + std::to_string(k), r);
  }
}

void id_resequ(Ctx& c, ResidualReport& rep) {
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    const int k = 2 + (s % 2);
    Complex z = c.sampler.region_point(c.region, 0);
    Complex lam0 = c.region.lambda0;
    Mat M = resolvent_power(c.A, c.C, lam0, k); // (lam0 - A)^{-k} C
    Mat lhs = c.cres(c.A2, Mat(c.C * M), z);
    Mat rhs = std::pow(-1.0, k) / std::pow(z - lam0, k) *
              c.cres(c.A2, Mat(c.C * c.C), z);
    for (int i = 1; i <= k; ++i)
      rhs += std::pow(-1.0, k - i) / std::pow(z - lam0, k + 1 - i) *
             resolvent_power(c.A, Mat(c.C * c.C), lam0, i);
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "z=" + fmt(z) + ";k=" + std::to_string(k), r);
  }
}

void id_klim(Ctx& c, ResidualReport& rep) {
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    const int k = 1 + (s % 2);
    const double lam = 2.0 + 8.0 * c.sampler.u(0);
    Mat chain = c.chain(c.A, k, 2);
    if (chain.cols() == 0) {
      push(rep, "k=" + std::to_string(k), kFailResidual, "empty chain");
      continue;
    }
    Vec x = chain.col(0);
    Vec lhs = std::pow(lam, k) * (resolvent_power(c.A2, c.C1, lam, k) * x);
    Vec rhs = c.C1 * x;
    double binom = 1.0;
    for (int j = 1; j <= k; ++j) {
      binom = binom * (k - j + 1) / j;
      rhs += binom * (resolvent_power(c.A, c.C1, lam, j) * chain.col(j));
    }
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "lambda=" + fmt(lam) + ";k=" + std::to_string(k), r);
  }
}

// ---- power identities ------------------------------------------------

void id_homomorphism(Ctx& c, ResidualReport& rep) {
  const Contour gamma = default_contour(c.region);
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    Complex b1(0.2 + 1.3 * c.sampler.u(0), 0.3 * (2 * c.sampler.u(1) - 1));
    Complex b2(0.2 + 1.3 * c.sampler.u(2), 0.3 * (2 * c.sampler.u(3) - 1));
    CalcFunction f{[b1](Complex z) { return principal_power(z, -b1); },
                   b1.real(), "z^{-b1}"};
    CalcFunction g{[b2](Complex z) { return principal_power(z, -b2); },
                   b2.real(), "z^{-b2}"};
    CalcFunction fg{
        [b1, b2](Complex z) { return principal_power(z, -b1 - b2); },
        b1.real() + b2.real(), "z^{-b1-b2}"};
    Mat lhs = hfunctional_calc(c.A2, c.C1b, f, gamma, c.qtol) *
              hfunctional_calc(c.A, c.C1, g, gamma, c.qtol);
    Mat rhs = hfunctional_calc(c.A, c.C1, fg, gamma, c.qtol) * c.C1;
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "b1=" + fmt(b1) + ";b2=" + fmt(b2), r);
  }
}

void id_power_add(Ctx& c, ResidualReport& rep) {
  for (int s = 0; s < c.nsamples; ++s, c.sampler.advance()) {
    Complex b1(0.2 + 1.3 * c.sampler.u(0), 0.3 * (2 * c.sampler.u(1) - 1));
    Complex b2(0.2 + 1.3 * c.sampler.u(2), 0.3 * (2 * c.sampler.u(3) - 1));
    PowerSpec s1{b1, PowerSpec::Route::Contour, 1};
    PowerSpec s2{b2, PowerSpec::Route::Contour, 1};
    PowerSpec s12{b1 + b2, PowerSpec::Route::Contour, 1};
    Mat lhs = neg_power(c.A2, c.C1b, c.region, s1, c.qtol) *
              neg_power(c.A, c.C1, c.region, s2, c.qtol);
    Mat rhs = neg_power(c.A, c.C1, c.region, s12, c.qtol) * c.C1;
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "b1=" + fmt(b1) + ";b2=" + fmt(b2), r);
  }
}

void id_residue(Ctx& c, ResidualReport& rep) {
  for (int n = 1; n <= 3; ++n) {
    PowerSpec spec{Complex(n, 0.0), PowerSpec::Route::Contour, 1};
    Mat lhs = neg_power(c.A2, c.C1b, c.region, spec, c.qtol);
    Mat rhs = resolvent_power(c.A, c.C1, Complex(0.0, 0.0), n);
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "n=" + std::to_string(n), r);
  }
}

void id_s_inclusions(Ctx& c, ResidualReport& rep) {
  for (int s = 0; s < std::min(c.nsamples, 3); ++s, c.sampler.advance()) {
    double b1 = 0.3 + 0.6 * c.sampler.u(0);
    double b2 = 0.3 + 0.6 * c.sampler.u(1);
    LinearRelation P1 = power_relation(c.A2, c.C1b, c.region, -b1, c.qtol);
    LinearRelation P2 = power_relation(c.A, c.C1, c.region, -b2, c.qtol);
    LinearRelation P12 =
        power_relation(c.A, c.C1, c.region, -(b1 + b2), c.qtol);
    // S.1 on b1, then both S.2 inclusions for negative exponents.
    double r = relation_subset(P1, c.sandwich(P1), 1.0).defect;
    r = std::max(r,
                 relation_subset(P12, c.sandwich(compose(P1, P2)), 1.0).defect);
    r = std::max(r,
                 relation_subset(compose(P1, P2), c.sandwich(P12), 1.0).defect);
    // S.3: positive exponents.
    LinearRelation Q1 = power_relation(c.A2, c.C1b, c.region, b1, c.qtol);
    LinearRelation Q2 = power_relation(c.A, c.C1, c.region, b2, c.qtol);
    LinearRelation Q12 =
        power_relation(c.A, c.C1, c.region, b1 + b2, c.qtol);
    r = std::max(r,
                 relation_subset(Q12, c.sandwich(compose(Q1, Q2)), 1.0).defect);
    r = std::max(r,
                 relation_subset(compose(Q1, Q2), c.sandwich(Q12), 1.0).defect);
    push(rep, "b1=" + fmt(b1) + ";b2=" + fmt(b2), r);
  }
}

// ---- semigroup identities ---------------------------------------------

void id_sg_law(Ctx& c, ResidualReport& rep) {
  const double ts[3] = {0.3, 0.7, 1.1};
  const double gs[2] = {0.2, 0.45};
  for (double g : gs)
    for (double t1 : ts)
      for (double t2 : ts) {
        if (t2 < t1) continue; // symmetric
        Mat lhs = evaluate_sg(c.A2, c.C1b, c.region, g + (c.gamma2 - c.gamma),
                              t1, c.qtol) *
                  evaluate_sg(c.A, c.C1, c.region, g, t2, c.qtol);
        Mat rhs =
            evaluate_sg(c.A, c.C1, c.region, g, t1 + t2, c.qtol) * c.C1;
        double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
        push(rep, "gamma=" + fmt(g) + ";t1=" + fmt(t1) + ";t2=" + fmt(t2), r);
      }
}

void id_sg_limit(Ctx& c, ResidualReport& rep) {
  for (int s = 0; s < std::min(c.nsamples, 3); ++s, c.sampler.advance()) {
    Vec x = c.sampler.in_span(c.A.parts().domain, 0);
    if (x.norm() == 0.0) {
      push(rep, "s=" + std::to_string(s), kFailResidual, "empty domain");
      continue;
    }
    double last = std::numeric_limits<double>::infinity();
    for (int j = 6; j <= 12; ++j) {
      Mat S = evaluate_sg(c.A2, c.C1b, c.region, c.gamma2,
                          std::pow(2.0, -j), c.tol / 10.0);
      last = std::min(last, (S * x - c.C1 * x).norm());
    }
    push(rep, "x#" + std::to_string(s), last);
  }
}

void id_sg_commute(Ctx& c, ResidualReport& rep) {
  const double nus[2] = {0.5, 1.0};
  for (double nu : nus) {
    c.sampler.advance();
    LinearRelation Pnu = power_relation(c.A, c.C1, c.region, nu, c.qtol);
    Mat chain = c.chain(Pnu, 1, 0);
    if (chain.cols() == 0) {
      push(rep, "nu=" + fmt(nu), kFailResidual, "empty power relation");
      continue;
    }
    Vec x = chain.col(0), y = chain.col(1);
    Mat S = evaluate_sg(c.A2, c.C1b, c.region, c.gamma2, 0.5, c.qtol);
    auto m = power_membership(c.A, c.C1, c.region, nu, Vec(S * x), Vec(S * y),
                              c.qtol);
    push(rep, "nu=" + fmt(nu), m.residual);
  }
}

void id_subgen_AB(Ctx& c, ResidualReport& rep) {
  const double zeta = 1.0;
  for (double t : {0.5, 1.0}) {
    c.sampler.advance();
    // (x, y) in -(-A)_gamma, i.e. (x, -y) in (-A)_gamma.
    LinearRelation Pg =
        power_relation(c.A, c.C1, c.region, c.gamma, c.qtol);
    Mat chain = c.chain(Pg, 1, 0);
    if (chain.cols() == 0) {
      push(rep, "t=" + fmt(t), kFailResidual, "empty power relation");
      continue;
    }
    Vec x = chain.col(0), y = -chain.col(1);
    // (A): the s-integral of S_{gamma,zeta} y is S_{gamma,zeta+1} y.
    Vec lhsA =
        Vec(evaluate_sg_integrated(c.A2, c.C1b, c.region, c.gamma2, zeta, t,
                                   c.qtol) *
            x) -
        gzeta_eval(zeta + 1.0, t) * (c.C1 * x) -
        Vec(evaluate_sg_integrated(c.A, c.C1, c.region, c.gamma, zeta + 1.0,
                                   t, c.qtol) *
            y);
    double r = lhsA.norm() / (1.0 + x.norm());
    // (B): membership of the integrated pair.
    Vec u = evaluate_sg_integrated(c.A2, c.C1b, c.region, c.gamma2,
                                   zeta + 1.0, t, c.qtol) *
            x;
    Vec v = Vec(evaluate_sg_integrated(c.A, c.C1, c.region, c.gamma, zeta, t,
                                       c.qtol) *
                x) -
            gzeta_eval(zeta + 1.0, t) * (c.C1 * x);
    auto m =
        power_membership(c.A, c.C1, c.region, c.gamma, u, Vec(-v), c.qtol);
    r = std::max(r, m.residual);
    push(rep, "t=" + fmt(t) + ";zeta=1", r);
  }
}

void id_qzero(Ctx& c, ResidualReport& rep) {
  // t = 3 keeps the absolute mass of the integrand small enough that
  // the exact cancellation survives in double precision.
  const double t = 3.0;
  for (int n = 1; n <= 2; ++n) {
    // Mixed-branch kernel: both branches use the primary gamma when the
    // perturbation is zero and the integral vanishes identically.
    auto f = [&](double lam) -> Mat {
      const double lgm = std::pow(lam, c.gamma);
      const double lgp = std::pow(lam, c.gamma2);
      Complex val = (std::exp(-t * lgm * std::exp(-kI * kPi * c.gamma)) -
                     std::exp(-t * lgp * std::exp(kI * kPi * c.gamma2))) /
                    (2.0 * kPi * kI);
      Mat out(1, 1);
      out(0, 0) = std::pow(lam, n) * val;
      return out;
    };
    HalflineDecay decay;
    decay.kind = HalflineDecay::Kind::Exponential;
    decay.rate = t * std::cos(kPi * std::max(c.gamma, c.gamma2));
    decay.gamma = std::min(c.gamma, c.gamma2);
    decay.low_exponent = n + 1.0;
    decay.scale = 1.0;
    QuadResult q = quad_halfline(f, std::min(c.tol, 1e-9), decay);
    push(rep, "n=" + std::to_string(n) + ";t=3", std::abs(q.value(0, 0)));
  }
}

void id_an_membership(Ctx& c, ResidualReport& rep) {
  const double t = 0.8;
  for (int n = 1; n <= 2; ++n) {
    c.sampler.advance();
    Vec x = c.sampler.vector(c.A.dim(), 0);
    Vec sx = evaluate_sg(c.A2, c.C1b, c.region, c.gamma2, t, c.qtol) * x;
    Vec mx = an_moment(c.A2, c.C1b, c.gamma2, n, t, c.qtol) * x;
    auto m = integer_power(c.A, n).contains_pair(sx, mx, c.tol);
    push(rep, "n=" + std::to_string(n) + ";t=" + fmt(t), m.residual);
  }
}

void id_frac_deriv(Ctx& c, ResidualReport& rep) {
  const double beta = 2.0, theta = 0.0, t = 1.0;
  c.sampler.advance();
  Vec x = c.sampler.vector(c.A.dim(), 0);
  const double inner_tol = 1e-9;
  DecayingMap u{[&](double tau) -> Vec {
                  return evaluate_sg(c.A2, c.C1b, c.region, c.gamma2,
                                     tau * std::exp(kI * theta), inner_tol) *
                         x;
                },
                0.3, 2.0 * (1.0 + c.C1.norm())};
  Vec lhs = liouville_right_deriv(u, beta, t, inner_tol);
  Vec rhs =
      frac_deriv_integral(c.A, c.C1, c.gamma, beta, theta, t, c.qtol) * x;
  double r = (lhs - rhs).norm() / (1e-6 + rhs.norm());
  push(rep, "beta=2;gamma=" + fmt(c.gamma) + ";t=1", r);
}

void id_second_order(Ctx& c, ResidualReport& rep) {
  const double t = 1.0, h = 1e-3;
  c.sampler.advance();
  Vec x = c.sampler.vector(c.A.dim(), 0);
  const double inner_tol = 1e-10;
  auto S = [&](double tau) -> Vec {
    return evaluate_sg_half(c.A2, c.C1b, c.region, tau, inner_tol) * x;
  };
  Vec mid = S(t);
  Vec second = (S(t + h) - 2.0 * mid + S(t - h)) / (h * h);
  LinearRelation negA = scalar_shift_mul(c.A, Complex(-1.0, 0.0),
                                         Complex(0.0, 0.0));
  auto m = negA.contains_pair(mid, second, c.tol);
  push(rep, "t=1;h=1e-3", m.residual);
}

void id_laplace(Ctx& c, ResidualReport& rep) {
  for (double lam : {1.0, 2.0}) {
    const double T = std::log(20.0 * (1.0 + c.C1.norm()) / c.tol) / lam;
    auto f = [&](double t) -> Mat {
      if (t <= 1e-12) return c.C1b;
      return std::exp(-lam * t) *
             evaluate_sg_half(c.A2, c.C1b, c.region, t, c.tol / 50.0);
    };
    Mat lhs = quad_interval(f, 0.0, T, c.tol * T).value;
    Mat rhs = F_lambda_eval(c.A, c.C1, c.region, 0.5, 0.0, lam, c.tol / 10.0);
    double r = (lhs - rhs).norm() / (1.0 + rhs.norm());
    push(rep, "lambda=" + fmt(lam), r);
  }
}

const std::vector<std::pair<std::string, IdentityFn>>& catalog() {
  static const std::vector<std::pair<std::string, IdentityFn>> kCatalog = {
      {"resolvent_eq", id_resolvent_eq},
      {"creso", id_creso},
      {"genres_i", id_genres_i},
      {"genres_ii", id_genres_ii},
      {"resequ", id_resequ},
      {"klim", id_klim},
      {"homomorphism", id_homomorphism},
      {"power_add", id_power_add},
      {"residue", id_residue},
      {"s_inclusions", id_s_inclusions},
      {"sg_law", id_sg_law},
      {"sg_limit", id_sg_limit},
      {"sg_commute", id_sg_commute},
      {"subgen_AB", id_subgen_AB},
      {"qzero", id_qzero},
      {"an_membership", id_an_membership},
      {"frac_deriv", id_frac_deriv},
      {"second_order", id_second_order},
      {"laplace", id_laplace},
  };
  return kCatalog;
}

} // namespace

const std::vector<std::string>& identity_catalog() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> names;
    for (const auto& [name, fn] : catalog()) names.push_back(name);
    return names;
  }();
  return kNames;
}

ResidualReport verify_identity(const std::string& id, const ProblemSpec& spec,
                               double tol, const VerifyOptions& opts) {
  const IdentityFn* fn = nullptr;
  for (const auto& [name, f] : catalog())
    if (name == id) fn = &f;
  if (!fn) throw UnknownIdentity("unknown identity: " + id);

  const auto start = std::chrono::steady_clock::now();
  ResidualReport rep;
  rep.identity_id = id;
  rep.tol = tol;
  try {
    Ctx ctx(spec, tol, opts);
    const size_t before = rep.samples.size();
    try {
      (*fn)(ctx, rep);
    } catch (const std::exception& e) {
      // A mid-suite failure poisons the remaining samples, not the run.
      while (rep.samples.size() > before + 64) rep.samples.pop_back();
      push(rep, "suite", kFailResidual, e.what());
    }
  } catch (const std::exception& e) {
    push(rep, "setup", kFailResidual, e.what());
  }
  for (const auto& s : rep.samples)
    rep.max_residual = std::max(rep.max_residual, s.residual);
  rep.pass = !rep.samples.empty() && rep.max_residual <= tol;
  rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return rep;
}

std::vector<ResidualReport> verify_all(const ProblemSpec& spec, double tol,
                                       const VerifyOptions& opts) {
  std::vector<ResidualReport> out;
  for (const auto& name : identity_catalog())
    out.push_back(verify_identity(name, spec, tol, opts));
  return out;
}

namespace {

nlohmann::json report_json(const ResidualReport& r, bool include_runtime) {
  nlohmann::json j;
  j["identity_id"] = r.identity_id;
  j["tol"] = r.tol;
  j["max_residual"] = r.max_residual;
  j["pass"] = r.pass;
  if (include_runtime) j["runtime_ms"] = r.runtime_ms;
  j["samples"] = nlohmann::json::array();
  for (const auto& s : r.samples)
    j["samples"].push_back({{"digest", s.digest},
                            {"residual", s.residual},
                            {"ok", s.ok},
                            {"note", s.note}});
  return j;
}

} // namespace

std::string report_to_json(const ResidualReport& report,
                           bool include_runtime) {
  return report_json(report, include_runtime).dump(2) + "\n";
}

std::string reports_to_json(const std::vector<ResidualReport>& reports,
                            bool include_runtime) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_json(r, include_runtime));
  return arr.dump(2) + "\n";
}

ResidualReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ResidualReport r;
  r.identity_id = j.at("identity_id").get<std::string>();
  r.tol = j.at("tol").get<double>();
  r.max_residual = j.at("max_residual").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.runtime_ms = j.value("runtime_ms", 0L);
  for (const auto& s : j.at("samples"))
    r.samples.push_back({s.at("digest").get<std::string>(),
                         s.at("residual").get<double>(),
                         s.at("ok").get<bool>(),
                         s.at("note").get<std::string>()});
  return r;
}

} // namespace relpow
