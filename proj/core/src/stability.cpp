#include "saddlekit/stability.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace saddlekit {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// 16-point Gauss-Legendre on [-1, 1] for the far-zone z panels.
constexpr int kGaussZ = 16;
constexpr double kGzX[kGaussZ] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double kGzW[kGaussZ] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SADDLEKIT_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return static_cast<int>(hw);
}

void parallel_for(int count, const std::function<void(int)>& body) {
  const int threads = std::min(thread_budget(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

}  // namespace

// ---------------------------------------------------------------------------
// piecewise eta family

static void check_eta_params(const PiecewiseEtaParams& p) {
  if (!(p.rho1 > 0.0 && 2.0 * p.rho1 < 1.0 && p.rho2 > 1.0))
    throw std::domain_error("piecewise_eta: requires 0 < 2 rho1 < 1 < rho2");
  if (!(p.alpha > 0.0))
    throw std::domain_error("piecewise_eta: requires alpha > 0");
}

double piecewise_eta(double rho, const PiecewiseEtaParams& p) {
  check_eta_params(p);
  const double cap = 1.0 - std::pow(p.rho2, -p.alpha);
  if (rho <= p.rho1 || rho >= p.rho2) return 0.0;
  if (rho <= 2.0 * p.rho1) return cap * (rho - p.rho1) / p.rho1;
  if (rho <= 1.0) return cap;
  return std::pow(rho, -p.alpha) - std::pow(p.rho2, -p.alpha);
}

double piecewise_eta_deriv(double rho, const PiecewiseEtaParams& p) {
  check_eta_params(p);
  const double cap = 1.0 - std::pow(p.rho2, -p.alpha);
  if (rho <= p.rho1 || rho >= p.rho2) return 0.0;
  if (rho <= 2.0 * p.rho1) return cap / p.rho1;
  if (rho <= 1.0) return 0.0;
  return -p.alpha * std::pow(rho, -p.alpha - 1.0);
}

Eta1D make_piecewise_eta(const PiecewiseEtaParams& p) {
  check_eta_params(p);
  Eta1D eta;
  eta.value = [p](double rho) { return piecewise_eta(rho, p); };
  eta.deriv = [p](double rho) { return piecewise_eta_deriv(rho, p); };
  eta.kinks = {p.rho1, 2.0 * p.rho1, 1.0, p.rho2};
  eta.lo = p.rho1;
  eta.hi = p.rho2;
  return eta;
}

// ---------------------------------------------------------------------------
// radial functional and Hardy margin

namespace {

double gauss_piece(int m, const Eta1D& eta, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int q = 0; q < kGaussZ; ++q) {
    const double rho = mid + half * kGzX[q];
    const double e = eta.value(rho);
    const double de = eta.deriv(rho);
    const double w = std::pow(rho, 2 * (m - 1));
    acc += kGzW[q] * w * (de * de - (2.0 * (m - 1) / (rho * rho)) * e * e);
  }
  return acc * half;
}

}  // namespace

double rho_integral(int m, const Eta1D& eta, double tol) {
  if (m < 1) throw std::invalid_argument("rho_integral: m must be >= 1");
  if (!(eta.lo > 0.0) || !(eta.hi > eta.lo))
    throw std::invalid_argument("rho_integral: eta needs compact support in (0, inf)");
  std::vector<double> breaks = eta.kinks;
  breaks.push_back(eta.lo);
  breaks.push_back(eta.hi);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double total = 0.0;
  for (size_t p = 0; p + 1 < breaks.size(); ++p) {
    if (breaks[p + 1] <= eta.lo || breaks[p] >= eta.hi) continue;
    const double lo = std::max(breaks[p], eta.lo);
    const double hi = std::min(breaks[p + 1], eta.hi);
    double coarse = gauss_piece(m, eta, lo, hi);
    bool converged = false;
    for (int level = 1; level <= 14; ++level) {
      const int cells = 1 << level;
      double fine = 0.0;
      for (int c = 0; c < cells; ++c)
        fine += gauss_piece(m, eta, lo + c * (hi - lo) / cells,
                            lo + (c + 1) * (hi - lo) / cells);
      if (std::abs(fine - coarse) <= tol * std::max(1.0, std::abs(fine))) {
        total += fine;
        converged = true;
        break;
      }
      coarse = fine;
    }
    if (!converged)
      throw std::runtime_error("rho_integral: quadrature failed to converge");
  }
  return total;
}

double hardy_margin(int m) {
  if (m < 1) throw std::invalid_argument("hardy_margin: m must be >= 1");
  const int n = 2 * m;
  return (n * n - 10 * n + 17) / 4.0;
}

// ---------------------------------------------------------------------------
// field view with first-order far-field completion

FieldView::FieldView(const SquareField& field, const Profile1D& profile)
    : field_(&field),
      profile_(&profile),
      model_profile_(build_profile(profile.spec(), 14.0, 8192)) {
  // correction w solving w'' + f'(u0) w = 2(m-1) z u0', odd and decaying;
  // Thomas solve of the tridiagonal system on (0, zmax)
  const int n = 11200;
  const double zmax = 14.0;
  w_dz_ = zmax / n;
  wz_.resize(n + 1);
  w_.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) wz_[k] = k * w_dz_;

  const NonlinearitySpec& spec = model_profile_.spec();
  const int mm = field.m;
  if (mm > 1) {
    std::vector<double> lower(n - 1), diag(n - 1), upper(n - 1), rhs(n - 1);
    const double inv_h2 = 1.0 / (w_dz_ * w_dz_);
    for (int k = 1; k < n; ++k) {
      const double z = wz_[k];
      diag[k - 1] = -2.0 * inv_h2 + spec.df(model_profile_.eval(z));
      lower[k - 1] = inv_h2;
      upper[k - 1] = inv_h2;
      rhs[k - 1] = 2.0 * (mm - 1) * z * model_profile_.eval_deriv(z);
    }
    for (int k = 1; k < n - 1; ++k) {
      const double f = lower[k] / diag[k - 1];
      diag[k] -= f * upper[k - 1];
      rhs[k] -= f * rhs[k - 1];
    }
    w_[n - 1] = rhs[n - 2] / diag[n - 2];
    for (int k = n - 2; k >= 1; --k)
      w_[k] = (rhs[k - 1] - upper[k - 1] * w_[k + 1]) / diag[k - 1];
  }
  wp_.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (k >= 2 && k <= n - 2) {
      wp_[k] = (-w_[k + 2] + 8 * w_[k + 1] - 8 * w_[k - 1] + w_[k - 2]) /
               (12 * w_dz_);
    } else if (k == 0) {
      wp_[0] = (-3 * w_[0] + 4 * w_[1] - w_[2]) / (2 * w_dz_);
    } else if (k == 1) {
      wp_[1] = (w_[2] - w_[0]) / (2 * w_dz_);
    } else {
      wp_[k] = (w_[k] - w_[k - 1]) / w_dz_;
    }
  }
}

double FieldView::w_at(double z) const {
  const double az = std::abs(z);
  if (az >= wz_.back()) return 0.0;
  const int k = static_cast<int>(az / w_dz_);
  const double t = az / w_dz_ - k;
  const double v = (1.0 - t) * w_[k] + t * w_[k + 1];
  return z >= 0.0 ? v : -v;
}

double FieldView::wp_at(double z) const {
  const double az = std::abs(z);
  if (az >= wz_.back()) return 0.0;
  const int k = static_cast<int>(az / w_dz_);
  const double t = az / w_dz_ - k;
  return (1.0 - t) * wp_[k] + t * wp_[k + 1];  // w odd => w' even
}

double FieldView::wpp_at(double z) const {
  const NonlinearitySpec& spec = model_profile_.spec();
  return 2.0 * (field_->m - 1) * z * model_profile_.eval_deriv(z) -
         spec.df(model_profile_.eval(z)) * w_at(z);
}

double FieldView::bilinear(double s, double t) const {
  const int n = field_->n;
  const double h = field_->h;
  double fs = s / h, ft = t / h;
  int i = std::clamp(static_cast<int>(fs), 0, n - 1);
  int j = std::clamp(static_cast<int>(ft), 0, n - 1);
  fs -= i;
  ft -= j;
  return field_->at(i, j) * (1 - fs) * (1 - ft) +
         field_->at(i + 1, j) * fs * (1 - ft) +
         field_->at(i, j + 1) * (1 - fs) * ft +
         field_->at(i + 1, j + 1) * fs * ft;
}

double FieldView::model_u(double y, double z) const {
  const double y2 = std::max(y * y, 1e-12);
  return model_profile_.eval(z) + w_at(z) / y2;
}

double FieldView::model_uz(double y, double z) const {
  const double y2 = std::max(y * y, 1e-12);
  return model_profile_.eval_deriv(z) + wp_at(z) / y2;
}

double FieldView::model_uzz(double y, double z) const {
  const double y2 = std::max(y * y, 1e-12);
  return -model_profile_.spec().f(model_profile_.eval(z)) + wpp_at(z) / y2;
}

double FieldView::model_uzy(double y, double z) const {
  const double y3 = std::max(std::abs(y * y * y), 1e-12);
  return -2.0 * wp_at(z) / y3;
}

double FieldView::sample_yz(double y, double z) const {
  const double s = std::abs(y + z) / kSqrt2;
  const double t = std::abs(y - z) / kSqrt2;
  if (s <= field_->R && t <= field_->R) return bilinear(s, t);
  return model_u(y, z);
}

double FieldView::real_band_limit(double zcut) const {
  const double hr = field_->h / kSqrt2;
  return kSqrt2 * field_->R - zcut - 2.0 * hr;
}

// ---------------------------------------------------------------------------
// test functions

TestFunction TestFunction::eta_uz(double a, Eta1D eta) {
  if (!(a >= 1.0)) throw std::invalid_argument("TestFunction: scale a must be >= 1");
  TestFunction tf;
  tf.kind = Kind::EtaUz;
  tf.a = a;
  tf.eta = std::move(eta);
  return tf;
}

TestFunction TestFunction::cone_bump(const ConeBumpParams& p) {
  TestFunction tf;
  tf.kind = Kind::ConeVanishing;
  tf.bump = p;
  const double wy = 4.1 * p.sigma_y, wz = 4.1 * p.sigma_z;
  tf.y_lo = p.y0 - wy;
  tf.y_hi = p.y0 + wy;
  tf.z_lo = p.z0 - wz;
  tf.z_hi = p.z0 + wz;
  // quintic glue from 1 at |r| = 3 to 0 at |r| = 4
  auto glue = [](double r) {
    r = std::abs(r);
    if (r <= 3.0) return 1.0;
    if (r >= 4.0) return 0.0;
    const double x = r - 3.0;
    return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  };
  tf.fn = [p, glue](double y, double z) {
    const double ry = (y - p.y0) / p.sigma_y;
    const double rz = (z - p.z0) / p.sigma_z;
    return z * std::exp(-0.5 * (ry * ry + rz * rz)) * glue(ry) * glue(rz);
  };
  return tf;
}

double TestFunction::support_y_lo() const {
  return kind == Kind::EtaUz ? a * eta.lo : y_lo;
}

double TestFunction::support_y_hi() const {
  return kind == Kind::EtaUz ? a * eta.hi : y_hi;
}

// ---------------------------------------------------------------------------
// quadratic form

namespace {

double auto_zcut(const FieldView& view) {
  return std::clamp(0.35 * kSqrt2 * view.R(), 4.0, 12.0);
}

struct Segment {
  double lo, hi;
  int cells;
};

std::vector<Segment> split_segments(double lo, double hi,
                                    const std::vector<double>& kinks,
                                    double target_cell, int min_cells,
                                    int max_cells) {
  std::vector<double> breaks{lo, hi};
  for (double k : kinks)
    if (k > lo && k < hi) breaks.push_back(k);
  std::sort(breaks.begin(), breaks.end());
  std::vector<Segment> segs;
  for (size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    if (b - a < 1e-14) continue;
    int cells = static_cast<int>(std::ceil((b - a) / target_cell));
    cells = std::clamp(cells, min_cells, max_cells);
    segs.push_back({a, b, cells});
  }
  return segs;
}

// raster-zone quadrature of a generic xi(y, z) callable against sampled
// field values; midpoint cells, difference quotients at half-cell steps
double raster_quadrature(const FieldView& view,
                         const std::function<double(double, double)>& xi,
                         const std::vector<Segment>& ysegs, double z_lo,
                         double z_hi, double hr) {
  const int mm = view.m();
  const NonlinearitySpec& spec = view.spec();
  const int nz = std::max(2, static_cast<int>(std::ceil((z_hi - z_lo) / hr)));
  const double dz = (z_hi - z_lo) / nz;
  double total = 0.0;
  for (const Segment& seg : ysegs) {
    const double dy = (seg.hi - seg.lo) / seg.cells;
    for (int cy = 0; cy < seg.cells; ++cy) {
      const double yc = seg.lo + (cy + 0.5) * dy;
      double col = 0.0;
      for (int cz = 0; cz < nz; ++cz) {
        const double zc = z_lo + (cz + 0.5) * dz;
        if (std::abs(zc) >= yc) continue;
        const double w = std::pow(yc * yc - zc * zc, mm - 1);
        const double x0 = xi(yc, zc);
        const double xy = (xi(yc + 0.5 * dy, zc) - xi(yc - 0.5 * dy, zc)) / dy;
        const double xz = (xi(yc, zc + 0.5 * dz) - xi(yc, zc - 0.5 * dz)) / dz;
        const double v = view.sample_yz(yc, zc);
        col += w * (xy * xy + xz * xz - spec.df(v) * x0 * x0);
      }
      total += col * dy * dz;
    }
  }
  return total;
}

// far-zone quadrature for xi = eta(y/a) u_z with the analytic expansion
double far_quadrature(const FieldView& view, const TestFunction& tf,
                      const std::vector<Segment>& ysegs, double zcut) {
  const int mm = view.m();
  const NonlinearitySpec& spec = view.spec();
  const int panels = 28;
  double total = 0.0;
  for (const Segment& seg : ysegs) {
    const double dy = (seg.hi - seg.lo) / seg.cells;
    for (int cy = 0; cy < seg.cells; ++cy) {
      const double yc = seg.lo + (cy + 0.5) * dy;
      const double e = tf.eta.value(yc / tf.a);
      const double de = tf.eta.deriv(yc / tf.a) / tf.a;
      double col = 0.0;
      for (int p = 0; p < panels; ++p) {
        const double za = -zcut + 2.0 * zcut * p / panels;
        const double zb = -zcut + 2.0 * zcut * (p + 1) / panels;
        const double mid = 0.5 * (za + zb), half = 0.5 * (zb - za);
        for (int q = 0; q < kGaussZ; ++q) {
          const double z = mid + half * kGzX[q];
          if (std::abs(z) >= yc) continue;
          const double psi = view.model_uz(yc, z);
          const double xiy = de * psi + e * view.model_uzy(yc, z);
          const double xiz = e * view.model_uzz(yc, z);
          const double x0 = e * psi;
          const double w = std::pow(yc * yc - z * z, mm - 1);
          col += half * kGzW[q] *
                 w * (xiy * xiy + xiz * xiz - spec.df(view.model_u(yc, z)) * x0 * x0);
        }
      }
      total += col * dy;
    }
  }
  return total;
}

std::vector<double> scaled_kinks(const TestFunction& tf) {
  std::vector<double> kinks;
  for (double k : tf.eta.kinks) kinks.push_back(tf.a * k);
  return kinks;
}

int required_radius(double y_need, double zcut) {
  return static_cast<int>(std::ceil((y_need + zcut) / kSqrt2 / 0.95));
}

}  // namespace

double quadratic_form(const FieldView& view, const TestFunction& xi,
                      const QuadratureOptions& opts) {
  const double hr = view.h() / kSqrt2;

  if (xi.kind == TestFunction::Kind::EtaUz) {
    const double zcut = opts.zcut > 0.0 ? opts.zcut : auto_zcut(view);
    const double seam = view.real_band_limit(zcut);
    const double ylo = xi.support_y_lo();
    const double yhi = xi.support_y_hi();
    if (!opts.allow_far_field && yhi > seam) {
      std::ostringstream msg;
      msg << "quadratic_form: support reaches y = " << yhi
          << " beyond the field raster; requires R >= "
          << required_radius(yhi, zcut);
      throw std::runtime_error(msg.str());
    }
    const auto kinks = scaled_kinks(xi);
    double total = 0.0;
    if (ylo < seam) {
      auto xfun = [&](double y, double z) {
        const double uz =
            (view.sample_yz(y, z + hr) - view.sample_yz(y, z - hr)) / (2.0 * hr);
        return xi.eta.value(y / xi.a) * uz;
      };
      const auto segs =
          split_segments(ylo, std::min(yhi, seam), kinks, hr, 1, 1 << 22);
      total += raster_quadrature(view, xfun, segs, -zcut, zcut, hr);
    }
    if (yhi > seam) {
      const double lo = std::max(ylo, seam);
      // log-spaced cells resolve the scaled profile across decades
      std::vector<Segment> segs;
      for (const Segment& s :
           split_segments(lo, yhi, kinks, (yhi - lo), 1, 1)) {
        const int cells = std::clamp(
            static_cast<int>(600.0 * std::log10(s.hi / std::max(s.lo, 1e-6)) + 64),
            64, 20000);
        segs.push_back({s.lo, s.hi, cells});
      }
      total += far_quadrature(view, xi, segs, std::max(zcut, 12.0));
    }
    return total;
  }

  // bump and explicit kinds must sit inside the real raster
  const double zcut = std::max(std::abs(xi.z_lo), std::abs(xi.z_hi));
  const double seam = view.real_band_limit(zcut);
  if (xi.support_y_hi() > seam) {
    std::ostringstream msg;
    msg << "quadratic_form: support reaches y = " << xi.support_y_hi()
        << " beyond the field raster; requires R >= "
        << required_radius(xi.support_y_hi(), zcut);
    throw std::runtime_error(msg.str());
  }
  const auto segs = split_segments(std::max(xi.support_y_lo(), 0.0),
                                   xi.support_y_hi(), {}, hr, 1, 1 << 22);
  return raster_quadrature(view, xi.fn, segs, xi.z_lo, xi.z_hi, hr);
}

double quadratic_form_rescaled(const FieldView& view, const TestFunction& xi,
                               const QuadratureOptions& opts) {
  if (xi.kind != TestFunction::Kind::EtaUz)
    throw std::invalid_argument("quadratic_form_rescaled: EtaUz kind only");
  const double a = xi.a;
  const double hr = view.h() / kSqrt2;
  const double zcut = opts.zcut > 0.0 ? opts.zcut : auto_zcut(view);
  const double seam = view.real_band_limit(zcut);
  if (!opts.allow_far_field && xi.support_y_hi() > seam) {
    std::ostringstream msg;
    msg << "quadratic_form_rescaled: support reaches y = " << xi.support_y_hi()
        << " beyond the field raster; requires R >= "
        << required_radius(xi.support_y_hi(), zcut);
    throw std::runtime_error(msg.str());
  }

  // integrate in (rho, z), y = a rho, dy = a drho; same integrand
  const int mm = view.m();
  const NonlinearitySpec& spec = view.spec();
  auto xfun = [&](double rho, double z) {
    const double y = a * rho;
    const double uz = y > seam
                          ? view.model_uz(y, z)
                          : (view.sample_yz(y, z + hr) - view.sample_yz(y, z - hr)) /
                                (2.0 * hr);
    return xi.eta.value(rho) * uz;
  };
  const auto segs = split_segments(xi.eta.lo, xi.eta.hi, xi.eta.kinks, hr / a, 1,
                                   1 << 22);
  const double dz = hr;
  const int nz = std::max(2, static_cast<int>(std::ceil(2.0 * zcut / dz)));
  const double dz_eff = 2.0 * zcut / nz;
  double total = 0.0;
  for (const Segment& seg : segs) {
    const double dr = (seg.hi - seg.lo) / seg.cells;
    for (int cr = 0; cr < seg.cells; ++cr) {
      const double rc = seg.lo + (cr + 0.5) * dr;
      const double yc = a * rc;
      double col = 0.0;
      for (int cz = 0; cz < nz; ++cz) {
        const double zc = -zcut + (cz + 0.5) * dz_eff;
        if (std::abs(zc) >= yc) continue;
        const double w = std::pow(yc * yc - zc * zc, mm - 1);
        const double x0 = xfun(rc, zc);
        const double xr = (xfun(rc + 0.5 * dr, zc) - xfun(rc - 0.5 * dr, zc)) / dr;
        const double xz =
            (xfun(rc, zc + 0.5 * dz_eff) - xfun(rc, zc - 0.5 * dz_eff)) / dz_eff;
        const double v = yc > seam ? view.model_u(yc, zc) : view.sample_yz(yc, zc);
        // xi_y = xi_rho / a by the change of variables
        col += w * ((xr / a) * (xr / a) + xz * xz - spec.df(v) * x0 * x0);
      }
      total += col * (a * dr) * dz_eff;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// scans and reports

std::string to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::UnstableDemonstrated: return "unstable_demonstrated";
    case StabilityVerdict::AsymptoticallyStableMargin:
      return "asymptotically_stable_margin";
    case StabilityVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string StabilityReport::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [a, q] : q_values) rows.push_back({a, q});
  j["q_values"] = rows;
  j["rho_integral"] = rho_integral;
  j["prefactor"] = prefactor;
  j["limit_rhs"] = limit_rhs;
  j["hardy_margin"] = hardy_margin;
  j["verdict"] = to_string(verdict);
  if (has_cone_vanishing) j["cone_vanishing_min_q"] = cone_vanishing_min_q;
  if (!disjoint_q.empty()) {
    nlohmann::json d = nlohmann::json::array();
    for (const auto& [a, q] : disjoint_q) d.push_back({a, q});
    j["disjoint_q"] = d;
  }
  return j.dump(2);
}

StabilityReport instability_scan(const FieldView& view,
                                 std::span<const double> a_list,
                                 const PiecewiseEtaParams& eta_params) {
  StabilityReport report;
  report.m = view.m();
  const Eta1D eta = make_piecewise_eta(eta_params);
  report.rho_integral = saddlekit::rho_integral(report.m, eta);
  report.prefactor = dissipation_integral(view.profile());
  report.limit_rhs = report.prefactor * report.rho_integral;
  report.hardy_margin = saddlekit::hardy_margin(report.m);

  // the scan needs real data under the plateau of the innermost window
  const double zcut = auto_zcut(view);
  const double seam = view.real_band_limit(zcut);
  for (double a : a_list) {
    if (a * 2.0 * eta_params.rho1 >= seam) {
      std::ostringstream msg;
      msg << "instability_scan: window a = " << a
          << " starts beyond the field raster; requires R >= "
          << required_radius(a * 2.0 * eta_params.rho1, zcut);
      throw std::runtime_error(msg.str());
    }
  }

  report.q_values.resize(a_list.size());
  std::vector<double> alist(a_list.begin(), a_list.end());
  parallel_for(static_cast<int>(alist.size()), [&](int idx) {
    const double a = alist[idx];
    const TestFunction tf = TestFunction::eta_uz(a, eta);
    const double q = quadratic_form(view, tf);
    report.q_values[idx] = {a, q / std::pow(a, 2 * report.m - 3)};
  });

  bool negative = false;
  for (const auto& [a, q] : report.q_values)
    if (q < 0.0) negative = true;
  if (negative)
    report.verdict = StabilityVerdict::UnstableDemonstrated;
  else if (report.hardy_margin > 0.0)
    report.verdict = StabilityVerdict::AsymptoticallyStableMargin;
  else
    report.verdict = StabilityVerdict::Inconclusive;
  return report;
}

std::vector<std::pair<TestFunction, double>> disjoint_instability_family(
    const FieldView& view, int count) {
  if (view.m() != 3)
    throw std::invalid_argument("disjoint_instability_family: m must be 3");
  if (count < 1 || count > 3)
    throw std::invalid_argument(
        "disjoint_instability_family: count must be in [1, 3] (far-field "
        "quadrature precision bounds the outermost window)");

  const PiecewiseEtaParams params{0.15, 5.0, 1.75};
  const Eta1D eta = make_piecewise_eta(params);
  const double growth = (params.rho2 / params.rho1) * 1.05;

  const double zcut = auto_zcut(view);
  const double seam = view.real_band_limit(zcut);
  const double a0 = 0.95 * seam / params.rho2;
  if (a0 < 1.0) {
    std::ostringstream msg;
    msg << "disjoint_instability_family: grid too small to anchor the "
           "innermost window; requires R >= "
        << required_radius(params.rho2, zcut);
    throw std::runtime_error(msg.str());
  }

  std::vector<std::pair<TestFunction, double>> family;
  family.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double a = a0 * std::pow(growth, i);
    TestFunction tf = TestFunction::eta_uz(a, eta);
    const double q = quadratic_form(view, tf);
    family.emplace_back(std::move(tf), q);
  }
  return family;
}

double cone_vanishing_stability(const FieldView& view, int trials,
                                std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("cone_vanishing_stability: trials must be >= 1");
  const double ymax = kSqrt2 * view.R();
  std::vector<double> qs(trials, 0.0);
  parallel_for(trials, [&](int trial) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
    const double sigma_max = std::min(2.5, ymax / 25.0);
    ConeBumpParams p;
    p.sigma_y = uniform(rng, 0.3, sigma_max);
    p.sigma_z = uniform(rng, 0.3, sigma_max);
    p.z0 = uniform(rng, -1.0, 1.0) * std::min(3.0, 0.1 * ymax);
    // keep the support inside the wedge and the field raster
    const double z_extent = std::abs(p.z0) + 4.1 * p.sigma_z;
    const double y_low = z_extent + 4.1 * p.sigma_y + 0.3;
    const double y_high = ymax - z_extent - 4.1 * p.sigma_y - 0.5;
    p.y0 = uniform(rng, y_low, std::max(y_low + 0.1, y_high));
    const TestFunction tf = TestFunction::cone_bump(p);
    qs[trial] = quadratic_form(view, tf);
  });
  double min_q = qs[0];
  for (double q : qs) min_q = std::min(min_q, q);
  return min_q;
}

}  // namespace saddlekit
