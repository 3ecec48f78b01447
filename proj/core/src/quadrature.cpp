#include "hdecay/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hdecay/errors.hpp"
#include "hdecay/kernels.hpp"

namespace hdecay::quadrature {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = std::numeric_limits<double>::min();
constexpr double pi = std::numbers::pi;

// 21-point Kronrod rule with embedded 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};
constexpr std::size_t rule_points = 21;

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

enum class Piece { direct, mapped };

struct Segment {
  double a;
  double b;
  double value;
  double error;
  Piece piece;
};

struct ByError {
  bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.error < rhs.error; }
};

// One global refinement queue. `Integrand` is called as f(piece, x).
template <class Integrand>
class AdaptiveQueue {
 public:
  AdaptiveQueue(Integrand f, std::size_t max_evaluations, const char* label)
      : f_(std::move(f)), max_evaluations_(max_evaluations), label_(label) {}

  void add(Piece piece, double a, double b) {
    if (b <= a) return;
    push(rule(piece, a, b));
  }

  // Fixed contributions computed outside the queue (value and error bound).
  void add_fixed(double value, double error) {
    fixed_value_.add(value);
    fixed_error_ += error;
  }

  QuadratureResult run(double rel_tol) {
    std::size_t since_resync = 0;
    while (true) {
      double value = running_value_.value() + fixed_value_.value();
      double error = running_error_ + fixed_error_;
      if (error <= rel_tol * std::abs(value) || since_resync >= 1024) {
        resync();
        since_resync = 0;
        value = running_value_.value() + fixed_value_.value();
        error = running_error_ + fixed_error_;
        if (error <= rel_tol * std::abs(value)) {
          return {value, error, heap_.size(), evaluations_};
        }
      }
      if (heap_.empty()) fail("no refinable segment left", value, error);

      std::pop_heap(heap_.begin(), heap_.end(), ByError{});
      const Segment worst = heap_.back();
      heap_.pop_back();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b) ||
          (worst.b - worst.a) <= 8.0 * eps * std::max(std::abs(worst.a), std::abs(worst.b))) {
        heap_.push_back(worst);
        std::push_heap(heap_.begin(), heap_.end(), ByError{});
        fail("segment width reached machine resolution", value, error);
      }
      running_value_.add(-worst.value);
      running_error_ -= worst.error;
      push(rule(worst.piece, worst.a, mid));
      push(rule(worst.piece, mid, worst.b));
      ++since_resync;
    }
  }

 private:
  void push(const Segment& s) {
    heap_.push_back(s);
    std::push_heap(heap_.begin(), heap_.end(), ByError{});
    running_value_.add(s.value);
    running_error_ += s.error;
  }

  // Rebuild the running sums from scratch; removes drift from the
  // add/subtract bookkeeping and makes the final result order-stable.
  void resync() {
    std::vector<Segment> ordered = heap_;
    std::sort(ordered.begin(), ordered.end(),
              [](const Segment& l, const Segment& r) { return l.a < r.a || (l.a == r.a && l.piece < r.piece); });
    CompensatedSum v;
    CompensatedSum e;
    for (const auto& s : ordered) {
      v.add(s.value);
      e.add(s.error);
    }
    running_value_ = v;
    running_error_ = e.value();
  }

  Segment rule(Piece piece, double a, double b) {
    if (evaluations_ + rule_points > max_evaluations_) {
      const double value = running_value_.value() + fixed_value_.value();
      fail("evaluation budget exhausted", value, running_error_ + fixed_error_);
    }
    evaluations_ += rule_points;

    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f_(piece, centre);
    double resg = 0.0;
    double resk = wgk[10] * fc;
    double resabs = std::abs(resk);
    std::array<double, 10> fv1{};
    std::array<double, 10> fv2{};
    for (std::size_t j = 0; j < 10; ++j) {
      const double dx = half * xgk[j];
      const double f1 = f_(piece, centre - dx);
      const double f2 = f_(piece, centre + dx);
      fv1[j] = f1;
      fv2[j] = f2;
      resk += wgk[j] * (f1 + f2);
      resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
      if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = wgk[10] * std::abs(fc - reskh);
    for (std::size_t j = 0; j < 10; ++j) {
      resasc += wgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }
    const double result = resk * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    if (!std::isfinite(result)) fail("non-finite integrand value", result, err);
    return {a, b, result, err, piece};
  }

  [[noreturn]] void fail(const char* reason, double value, double error) const {
    std::ostringstream msg;
    msg << label_ << ": " << reason << " after " << evaluations_ << " evaluations (estimate "
        << value << " +/- " << error << ")";
    throw ConvergenceError(msg.str(), value, error);
  }

  Integrand f_;
  std::size_t max_evaluations_;
  const char* label_;
  std::size_t evaluations_ = 0;
  std::vector<Segment> heap_;
  CompensatedSum running_value_;
  double running_error_ = 0.0;
  CompensatedSum fixed_value_;
  double fixed_error_ = 0.0;
};

template <class Integrand>
AdaptiveQueue<Integrand> make_queue(Integrand f, std::size_t max_evaluations, const char* label) {
  return AdaptiveQueue<Integrand>(std::move(f), max_evaluations, label);
}

void check_common(double t, double rel_tol, const QuadratureOptions& options, const char* label) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(label) + ": t must be finite and >= 0");
  }
  if (!(rel_tol >= min_rel_tol && rel_tol <= max_rel_tol)) {
    throw ParameterError(std::string(label) + ": rel_tol must lie in [1e-13, 1e-3]");
  }
  if (options.max_cells == 0 || !(options.truncation_scale >= 1.0)) {
    throw ParameterError(std::string(label) + ": max_cells > 0 and truncation_scale >= 1 required");
  }
}

// Cells on [0, omega0], laid out downward from omega0 in steps of `width`.
template <class Queue>
void add_left_cells(Queue& q, double omega0, double t, std::size_t cap) {
  if (t == 0.0) {
    q.add(Piece::direct, 0.0, omega0);
    return;
  }
  const double width = pi / t;
  const double needed = std::ceil(omega0 / width);
  if (needed > static_cast<double>(cap)) {
    const double w = omega0 / static_cast<double>(cap);
    for (std::size_t k = 0; k < cap; ++k) {
      const double hi = omega0 - static_cast<double>(k) * w;
      const double lo = (k + 1 == cap) ? 0.0 : omega0 - static_cast<double>(k + 1) * w;
      q.add(Piece::direct, lo, hi);
    }
    return;
  }
  const auto count = static_cast<std::size_t>(needed);
  for (std::size_t k = 0; k < count; ++k) {
    const double hi = omega0 - static_cast<double>(k) * width;
    const double lo = std::max(0.0, omega0 - static_cast<double>(k + 1) * width);
    q.add(Piece::direct, lo, hi);
  }
}

}  // namespace

QuadratureResult integrate_truncated_dipole(const model::TransitionParams& params, double omegaC,
                                            double t, double rel_tol,
                                            const QuadratureOptions& options) {
  check_common(t, rel_tol, options, "integrate_truncated_dipole");
  const double w0 = params.omega0;
  if (!(omegaC > w0) || !std::isfinite(omegaC)) {
    throw DomainError("integrate_truncated_dipole: omegaC must exceed omega0");
  }
  auto q = make_queue(
      [&params, t](Piece, double omega) { return kernels::dipole_integrand(omega, t, params); },
      options.max_evaluations, "integrate_truncated_dipole");

  add_left_cells(q, w0, t, options.max_cells);
  const double span = omegaC - w0;
  const double width = t == 0.0 ? span : pi / t;
  const double needed = std::ceil(span / width);
  const std::size_t count =
      needed > static_cast<double>(options.max_cells) ? options.max_cells : static_cast<std::size_t>(needed);
  const double step = count == static_cast<std::size_t>(needed) ? width : span / static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double lo = w0 + static_cast<double>(k) * step;
    const double hi = (k + 1 == count) ? omegaC : std::min(omegaC, w0 + static_cast<double>(k + 1) * step);
    q.add(Piece::direct, lo, hi);
  }
  return q.run(rel_tol);
}

QuadratureResult integrate_exact(const model::TransitionParams& params, double t, double rel_tol,
                                 const QuadratureOptions& options) {
  check_common(t, rel_tol, options, "integrate_exact");
  const double w0 = params.omega0;
  const double wx = params.omegaX;

  if (t == 0.0) {
    // omega F(omega) is smooth; integrate to a finite point, then map the tail.
    const double upper = w0 + options.truncation_scale * 50.0 * wx;
    const double scale = upper;
    auto q = make_queue(
        [&params, upper, scale](Piece piece, double x) {
          if (piece == Piece::direct) return kernels::exact_integrand(x, 0.0, params);
          const double omega = upper + scale * (1.0 - x) / x;
          return scale / (x * x) * kernels::exact_integrand(omega, 0.0, params);
        },
        options.max_evaluations, "integrate_exact");
    q.add(Piece::direct, 0.0, w0);
    q.add(Piece::direct, w0, w0 + wx);
    q.add(Piece::direct, w0 + wx, upper);
    q.add(Piece::mapped, 0.0, 1.0);
    return q.run(rel_tol);
  }

  const double width = pi / t;
  const double omega_max = w0 + options.truncation_scale * std::max(50.0 * wx, 200.0 * pi / t);
  const double needed = std::ceil((omega_max - w0) / width);
  const std::size_t count = needed > static_cast<double>(options.max_cells)
                                ? options.max_cells
                                : static_cast<std::size_t>(needed);
  const double far_start = w0 + static_cast<double>(count) * width;
  const double far_delta = far_start - w0;
  const double inv_t2 = 1.0 / (t * t);

  // Beyond far_start: sinc^2 = 2 (1 - cos(t delta)) / (t delta)^2, so the
  // kernel is g(omega) (1 - cos(t delta)) / t^2 with g = 2 omega F / delta^2.
  auto g = [w0, wx](double omega) {
    const double delta = omega - w0;
    return 2.0 * omega * kernels::form_factor(omega, wx) / (delta * delta);
  };
  auto q = make_queue(
      [&params, t, far_start, far_delta, inv_t2, g](Piece piece, double x) {
        if (piece == Piece::direct) return kernels::exact_integrand(x, t, params);
        const double omega = far_start + far_delta * (1.0 - x) / x;
        return far_delta / (x * x) * g(omega) * inv_t2;
      },
      options.max_evaluations, "integrate_exact");

  add_left_cells(q, w0, t, options.max_cells);
  for (std::size_t k = 0; k < count; ++k) {
    const double lo = w0 + static_cast<double>(k) * width;
    const double hi = (k + 1 == count) ? far_start : w0 + static_cast<double>(k + 1) * width;
    q.add(Piece::direct, lo, hi);
  }
  q.add(Piece::mapped, 0.0, 1.0);

  // int_a^inf g cos(t delta) = -g s/t - g' c/t^2 + g'' s/t^3 - (1/t^3) int g''' s,
  // with s, c evaluated at a = far_start. The remainder is bounded by the
  // size of the g'' term's envelope.
  const double omega = far_start;
  const double delta = far_delta;
  const double q2 = wx * wx + omega * omega;
  const double log_d1 = 1.0 / omega - 2.0 / delta - 8.0 * omega / q2;
  const double log_d2 =
      -1.0 / (omega * omega) + 2.0 / (delta * delta) - 8.0 * (wx * wx - omega * omega) / (q2 * q2);
  const double g0 = g(omega);
  const double g1 = g0 * log_d1;
  const double g2 = g0 * (log_d1 * log_d1 + log_d2);
  const double s = std::sin(t * delta);
  const double c = std::cos(t * delta);
  const double cos_part = -g0 * s / t - g1 * c / (t * t) + g2 * s / (t * t * t);
  const double cos_error = std::abs(g2) / (t * t * t);
  q.add_fixed(-cos_part * inv_t2, cos_error * inv_t2);

  return q.run(rel_tol);
}

}  // namespace hdecay::quadrature
