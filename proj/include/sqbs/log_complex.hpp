#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <span>

namespace sqbs {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Wraps an angle to (-pi, pi].
inline double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * M_PI);
  if (w <= -M_PI) w += 2.0 * M_PI;
  return w;
}

/// Complex scalar stored as (log of modulus, phase in radians).
/// log_mag == -inf encodes an exact zero. Products of astronomically large
/// or small factors (high-order Hermite values, factorials) stay
/// representable where an ordinary double would overflow near exp(709).
struct LogComplex {
  double log_mag = kNegInf;
  double phase = 0.0;

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }

  static LogComplex from_polar(double log_mag, double phase) {
    if (std::isinf(log_mag) && log_mag < 0.0) return zero();
    return {log_mag, wrap_phase(phase)};
  }

  static LogComplex from(std::complex<double> z) {
    double m = std::abs(z);
    if (m == 0.0) return zero();
    return {std::log(m), std::arg(z)};
  }

  static LogComplex from_real(double x) {
    if (x == 0.0) return zero();
    return {std::log(std::abs(x)), x > 0.0 ? 0.0 : M_PI};
  }

  bool is_zero() const { return std::isinf(log_mag) && log_mag < 0.0; }

  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    return std::polar(std::exp(log_mag), phase);
  }
};

inline LogComplex logc_mul(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return LogComplex::zero();
  return {a.log_mag + b.log_mag, wrap_phase(a.phase + b.phase)};
}

/// Running complex sum with the scale factored out: terms are added as
/// exp(log_mag - ref) * unit and ref tracks the largest magnitude seen, so
/// the accumulator never overflows and cancellation down to an exact zero
/// is representable.
class LogAccumulator {
 public:
  void add(double log_mag, std::complex<double> unit) {
    if (std::isinf(log_mag) && log_mag < 0.0) return;
    if (log_mag > ref_) {
      acc_ *= std::exp(ref_ - log_mag);
      ref_ = log_mag;
    }
    acc_ += std::exp(log_mag - ref_) * unit;
  }

  void add(const LogComplex& t) {
    if (t.is_zero()) return;
    // keep the canonical real phases exact so that e.g. 1 + (-1) cancels to
    // an exact zero instead of a sin(pi) residue
    if (t.phase == 0.0) {
      add(t.log_mag, {1.0, 0.0});
    } else if (t.phase == M_PI || t.phase == -M_PI) {
      add(t.log_mag, {-1.0, 0.0});
    } else {
      add(t.log_mag, std::polar(1.0, t.phase));
    }
  }

  LogComplex value() const {
    if (std::isinf(ref_) && ref_ < 0.0) return LogComplex::zero();
    double m = std::abs(acc_);
    if (m == 0.0) return LogComplex::zero();
    return {ref_ + std::log(m), std::arg(acc_)};
  }

  /// Log of the largest term magnitude seen; the achievable absolute accuracy
  /// of the sum is a small multiple of eps times this scale.
  double max_term_log() const { return ref_; }

 private:
  double ref_ = kNegInf;
  std::complex<double> acc_{0.0, 0.0};
};

inline LogComplex logc_sum(std::span<const LogComplex> terms) {
  LogAccumulator acc;
  for (const auto& t : terms) acc.add(t);
  return acc.value();
}

inline LogComplex logc_add(const LogComplex& a, const LogComplex& b) {
  LogAccumulator acc;
  acc.add(a);
  acc.add(b);
  return acc.value();
}

}  // namespace sqbs
