#pragma once

#include <stdexcept>
#include <string>

namespace gsqg {

// Numeric codes are shared with the C API (gsqg_status in gsqg.h).
enum class ErrorCode : int {
  kDomain = 1,
  kRange = 2,
  kQuadratureAccuracy = 3,
  kConsistency = 4,
  kConfiguration = 5,
  kBlowup = 6,
  kRegimeExit = 7,
  kLocalization = 8,
  kResolution = 9,
  kIo = 10,
  kVerification = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& w) : Error(ErrorCode::kDomain, w) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& w) : Error(ErrorCode::kRange, w) {}
};

/// Raised when a quadrature error estimate exceeds its budget. Carries the
/// grid node where the estimate was worst.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& w, double worst_x, double estimate)
      : Error(ErrorCode::kQuadratureAccuracy, w),
        worst_x_(worst_x),
        estimate_(estimate) {}
  double worst_x() const noexcept { return worst_x_; }
  double estimate() const noexcept { return estimate_; }

 private:
  double worst_x_;
  double estimate_;
};

class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& w)
      : Error(ErrorCode::kConsistency, w) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& w)
      : Error(ErrorCode::kConfiguration, w) {}
};

/// Non-finite coefficient during time stepping.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& w, double last_good_t, std::string checkpoint)
      : Error(ErrorCode::kBlowup, w),
        last_good_t_(last_good_t),
        checkpoint_(std::move(checkpoint)) {}
  double last_good_t() const noexcept { return last_good_t_; }
  const std::string& last_checkpoint() const noexcept { return checkpoint_; }

 private:
  double last_good_t_;
  std::string checkpoint_;
};

/// The interface left the graph regime ||h_x||_inf < 1.
class RegimeError : public Error {
 public:
  RegimeError(const std::string& w, double slope)
      : Error(ErrorCode::kRegimeExit, w), slope_(slope) {}
  double slope() const noexcept { return slope_; }

 private:
  double slope_;
};

class LocalizationError : public Error {
 public:
  explicit LocalizationError(const std::string& w)
      : Error(ErrorCode::kLocalization, w) {}
};

class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& w)
      : Error(ErrorCode::kResolution, w) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& w) : Error(ErrorCode::kIo, w) {}
};

/// A command finished and wrote its artifacts, but a check on them failed.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& w) : Error(ErrorCode::kVerification, w) {}
};

}  // namespace gsqg
