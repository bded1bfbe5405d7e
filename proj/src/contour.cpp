#include "relpow/contour.hpp"

#include <cmath>

namespace relpow {

namespace {

// 15-point Kronrod extension of 7-point Gauss, positive abscissae.
constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {0.129484966168870, 0.279705391489277,
                               0.381830050505119, 0.417959183673469};

struct PanelResult {
  Mat k15;
  double err;
  double mass; // absolute Kronrod mass, sets the roundoff floor
};

template <typename F>
PanelResult gk15(const F& g, double a, double b, long& evals) {
  const double h = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Mat gm = g(mid);
  Mat k = h * kKronrodW[7] * gm;
  Mat gq = h * kGaussW[3] * gm;
  double mass = h * kKronrodW[7] * gm.norm();
  evals += 1;
  for (int i = 0; i < 7; ++i) {
    Mat lo = g(mid - h * kKronrodX[i]);
    Mat hi = g(mid + h * kKronrodX[i]);
    evals += 2;
    k += h * kKronrodW[i] * (lo + hi);
    mass += h * kKronrodW[i] * (lo.norm() + hi.norm());
    if (i % 2 == 1) gq += h * kGaussW[i / 2] * (lo + hi);
  }
  return {k, (k - gq).norm(), mass};
}

template <typename F>
void adaptive(const F& g, double a, double b, double tol_per_width,
              int depth, Mat& acc, double& err_acc, long& evals) {
  PanelResult p = gk15(g, a, b, evals);
  // The roundoff floor scales with the absolute mass: past it, further
  // subdivision refines noise. The evaluation budget bounds the tree.
  const double local_tol =
      std::max(tol_per_width * (b - a), 5e-15 * (1.0 + p.mass));
  if (p.err <= local_tol || depth >= 40 || evals > 5000000) {
    acc += p.k15;
    err_acc += p.err;
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive(g, a, mid, tol_per_width, depth + 1, acc, err_acc, evals);
  adaptive(g, mid, b, tol_per_width, depth + 1, acc, err_acc, evals);
}

} // namespace

void Contour::check_junctions(double tol) const {
  for (size_t i = 0; i + 1 < segments.size(); ++i) {
    Complex end = segments[i].z(segments[i].b);
    Complex start = segments[i + 1].z(segments[i + 1].a);
    if (std::abs(end - start) > tol * (1.0 + std::abs(end)))
      throw InvalidParams("contour segments do not join");
  }
}

Contour build_gamma(const RegionParams& params, double truncation_radius) {
  RegionParams p = params;
  p.mode = RegionParams::Mode::H;
  if (p.alpha < -1.0 || p.eps <= 0 || p.eps > 1 || p.c <= 0 || p.c >= 1 ||
      p.d <= 0 || p.d > 1)
    throw InvalidParams("build_gamma: parameters out of range");
  if (std::abs(p.coupling_defect()) > 1e-9)
    throw InvalidParams("build_gamma: coupling constraint violated");
  const double alpha = p.alpha, c = p.c, eps = p.eps, d = p.d;

  auto lower = [alpha, c](double u) {
    double r = std::exp(-u);
    return Complex(-r, -c * std::pow(1.0 + r, -alpha));
  };
  auto dlower = [alpha, c](double u) {
    double r = std::exp(-u);
    return Complex(r, -c * alpha * r * std::pow(1.0 + r, -alpha - 1.0));
  };
  auto upper = [alpha, c](double u) {
    double r = std::exp(u);
    return Complex(-r, c * std::pow(1.0 + r, -alpha));
  };
  auto dupper = [alpha, c](double u) {
    double r = std::exp(u);
    return Complex(-r, -c * alpha * r * std::pow(1.0 + r, -alpha - 1.0));
  };

  const double phi_high =
      std::atan2(c * std::pow(1.0 + eps, -alpha), -eps); // in (pi/2, pi)
  const double phi_low = -phi_high;
  auto arc = [d](double phi) { return d * std::exp(Complex(0.0, phi)); };
  auto darc = [d](double phi) {
    return Complex(0.0, 1.0) * d * std::exp(Complex(0.0, phi));
  };

  Contour gamma;
  gamma.truncation_radius = truncation_radius;
  Segment s1{lower, dlower, -std::log(truncation_radius), -std::log(eps),
             Segment::Kind::Ray, true};
  Segment s2{arc, darc, phi_low, phi_high, Segment::Kind::Arc, false};
  Segment s3{upper, dupper, std::log(eps), std::log(truncation_radius),
             Segment::Kind::Ray, true};
  gamma.segments = {s1, s2, s3};
  gamma.check_junctions(1e-12);
  return gamma;
}

Contour build_gamma_sector(double theta, double d, double truncation_radius) {
  if (theta <= 0.0 || theta >= kPi / 2)
    throw InvalidParams("build_gamma_sector: theta must lie in (0, pi/2)");
  if (d <= 0.0 || d > 1.0)
    throw InvalidParams("build_gamma_sector: d must lie in (0,1]");
  const double omega = kPi - theta;
  auto lower = [omega](double u) { return std::polar(std::exp(-u), -omega); };
  auto dlower = [omega](double u) {
    return -std::polar(std::exp(-u), -omega);
  };
  auto upper = [omega](double u) { return std::polar(std::exp(u), omega); };
  auto dupper = [omega](double u) { return std::polar(std::exp(u), omega); };
  auto arc = [d](double phi) { return d * std::exp(Complex(0.0, phi)); };
  auto darc = [d](double phi) {
    return Complex(0.0, 1.0) * d * std::exp(Complex(0.0, phi));
  };

  Contour gamma;
  gamma.truncation_radius = truncation_radius;
  Segment s1{lower, dlower, -std::log(truncation_radius), -std::log(d),
             Segment::Kind::Ray, true};
  Segment s2{arc, darc, -omega, omega, Segment::Kind::Arc, false};
  Segment s3{upper, dupper, std::log(d), std::log(truncation_radius),
             Segment::Kind::Ray, true};
  gamma.segments = {s1, s2, s3};
  gamma.check_junctions(1e-12);
  return gamma;
}

Contour build_gamma_laplace(double delta, double r0, double truncation_radius) {
  if (delta <= 0.0 || delta >= kPi / 2)
    throw InvalidParams("build_gamma_laplace: delta must lie in (0, pi/2)");
  if (r0 <= 0.0) throw InvalidParams("build_gamma_laplace: r0 must be > 0");
  const double omega = kPi / 2 + delta;
  auto lower = [omega](double u) { return std::polar(std::exp(-u), -omega); };
  auto dlower = [omega](double u) {
    return -std::polar(std::exp(-u), -omega);
  };
  auto upper = [omega](double u) { return std::polar(std::exp(u), omega); };
  auto dupper = [omega](double u) { return std::polar(std::exp(u), omega); };
  auto arc = [r0](double phi) { return r0 * std::exp(Complex(0.0, phi)); };
  auto darc = [r0](double phi) {
    return Complex(0.0, 1.0) * r0 * std::exp(Complex(0.0, phi));
  };
  Contour gamma;
  gamma.truncation_radius = truncation_radius;
  Segment s1{lower, dlower, -std::log(truncation_radius), -std::log(r0),
             Segment::Kind::Ray, true};
  Segment s2{arc, darc, -omega, omega, Segment::Kind::Arc, false};
  Segment s3{upper, dupper, std::log(r0), std::log(truncation_radius),
             Segment::Kind::Ray, true};
  gamma.segments = {s1, s2, s3};
  gamma.check_junctions(1e-12);
  return gamma;
}

int winding_number(const Contour& gamma, Complex z0) {
  const int samples = 2048;
  double total = 0.0;
  Complex first, prev;
  bool have_prev = false;
  auto track = [&](Complex z) {
    if (!have_prev) {
      first = z;
      prev = z;
      have_prev = true;
      return;
    }
    total += std::arg((z - z0) / (prev - z0));
    prev = z;
  };
  for (const auto& seg : gamma.segments)
    for (int i = 0; i <= samples; ++i)
      track(seg.z(seg.a + (seg.b - seg.a) * i / samples));
  // Close the truncated path with a straight chord.
  for (int i = 1; i <= samples; ++i)
    track(prev + (first - prev) * (1.0 / (samples - i + 1.0)));
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

QuadResult quad_contour(const std::function<Mat(Complex)>& f,
                        const Contour& gamma, double tol, double decay_s) {
  if (decay_s <= 0.0)
    throw InvalidParams("quad_contour: decay exponent must be positive");
  QuadResult out;
  double tail = 0.0;

  // Resolve truncation first: extend each ray until the analytic tail
  // bound (integrand ~ K e^{-s u} in log-radius parameter) is small.
  std::vector<Segment> segs = gamma.segments;
  const int nrays =
      static_cast<int>(std::count_if(segs.begin(), segs.end(), [](auto& s) {
        return s.extendable;
      }));
  for (auto& seg : segs) {
    if (!seg.extendable) continue;
    // Far end is the larger log-radius end.
    bool far_at_a = std::abs(seg.z(seg.a)) > std::abs(seg.z(seg.b));
    for (int iter = 0; iter < 60; ++iter) {
      double far = far_at_a ? seg.a : seg.b;
      double m = (f(seg.z(far)) * seg.dz(far)).norm();
      out.evaluations += 1;
      double bound = m / decay_s;
      if (bound <= tol / (10.0 * std::max(1, nrays)) || iter == 59) {
        tail += bound;
        break;
      }
      if (far_at_a)
        seg.a -= std::log(10.0);
      else
        seg.b += std::log(10.0);
    }
  }

  double total_width = 0.0;
  for (const auto& seg : segs) total_width += seg.b - seg.a;
  Mat acc;
  double err = 0.0;
  bool first = true;
  for (const auto& seg : segs) {
    auto g = [&](double t) -> Mat { return f(seg.z(t)) * seg.dz(t); };
    Mat part;
    if (first) {
      part = Mat(g(0.5 * (seg.a + seg.b)));
      out.evaluations += 1;
      acc = Mat::Zero(part.rows(), part.cols());
      first = false;
    }
    Mat piece = Mat::Zero(acc.rows(), acc.cols());
    adaptive(g, seg.a, seg.b, tol / (2.0 * total_width), 0, piece, err,
             out.evaluations);
    acc += piece;
  }
  out.value = acc;
  out.est_error = err;
  out.tail_bound = tail;
  if (err > tol) throw ToleranceNotMet(err);
  return out;
}

QuadResult quad_halfline(const std::function<Mat(double)>& f, double tol,
                         const HalflineDecay& decay) {
  if (decay.low_exponent <= 0.0)
    throw TailBoundMissing("quad_halfline: low_exponent must be positive");
  const double scale = std::max(decay.scale, 1e-300);
  const double tol10 = tol / 10.0;
  // Lower truncation: integral over (0, lambda_min) bounded by
  // scale * lambda_min^p / p.
  const double p = decay.low_exponent;
  double u_min = std::log(std::max(tol10 * p / scale, 1e-300)) / p;
  u_min = std::min(u_min, -2.0);
  double u_max;
  double tail = tol10;
  if (decay.kind == HalflineDecay::Kind::Algebraic) {
    if (decay.s <= 0.0)
      throw TailBoundMissing("quad_halfline: algebraic decay needs s > 0");
    u_max = std::log(10.0 * scale / (tol * decay.s)) / decay.s;
  } else {
    if (decay.rate <= 0.0 || decay.gamma <= 0.0)
      throw TailBoundMissing("quad_halfline: exponential decay needs rate,"
                             " gamma > 0");
    double T = 1.0;
    for (int i = 0; i < 20; ++i) {
      double L = std::log(10.0 * scale / tol) +
                 (1.0 / decay.gamma + 1.0) * std::log(1.0 + T);
      T = std::pow(std::max(L, 1.0) / decay.rate, 1.0 / decay.gamma);
    }
    u_max = std::log(T);
  }
  u_max = std::max(u_max, 2.0);

  auto g = [&](double u) -> Mat { return std::exp(u) * f(std::exp(u)); };
  QuadResult out;
  Mat probe = g(0.0);
  out.evaluations = 1;
  Mat acc = Mat::Zero(probe.rows(), probe.cols());
  double err = 0.0;
  adaptive(g, u_min, u_max, tol / (2.0 * (u_max - u_min)), 0, acc, err,
           out.evaluations);
  out.value = acc;
  out.est_error = err;
  out.tail_bound = 2.0 * tail;
  if (err > tol) throw ToleranceNotMet(err);
  return out;
}

QuadResult quad_interval(const std::function<Mat(double)>& f, double a,
                         double b, double tol) {
  QuadResult out;
  Mat probe = f(0.5 * (a + b));
  out.evaluations = 1;
  Mat acc = Mat::Zero(probe.rows(), probe.cols());
  double err = 0.0;
  adaptive(f, a, b, tol / (2.0 * std::max(b - a, 1e-300)), 0, acc, err,
           out.evaluations);
  out.value = acc;
  out.est_error = err;
  if (err > tol) throw ToleranceNotMet(err);
  return out;
}

} // namespace relpow
