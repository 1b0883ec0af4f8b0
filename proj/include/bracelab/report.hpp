#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bracelab {

/// Element of a finite group or skew brace, identified by its index 0..n-1.
/// Index 0 is always the identity.
using Elem = std::uint32_t;

/// A tuple of elements that witnesses a property (or its failure).
using Witness = std::vector<Elem>;

enum class ErrorKind {
  NotAGroup,
  NotNormal,
  IdentityMismatch,
  LeftBraceViolation,
  NotAnIdeal,
  InternalInconsistency,
  IdentityViolation,
  EquivalenceViolation,
  TheoremViolation,
  NonPrimeModulus,
  SingularGenerator,
  ClosureBudgetExceeded,
  DimensionMismatch,
  InvalidAction,
  SizeExceeded,
  ConstructionInvalid,
  NoSurjection,
  PreconditionFailed,
  BudgetExceeded,
  SyntaxError,
  ValidationError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::IdentityMismatch: return "IdentityMismatch";
    case ErrorKind::LeftBraceViolation: return "LeftBraceViolation";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::SingularGenerator: return "SingularGenerator";
    case ErrorKind::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidAction: return "InvalidAction";
    case ErrorKind::SizeExceeded: return "SizeExceeded";
    case ErrorKind::ConstructionInvalid: return "ConstructionInvalid";
    case ErrorKind::NoSurjection: return "NoSurjection";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

/// Exception type for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::vector<Witness> witnesses = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        witnesses_(std::move(witnesses)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }

 private:
  ErrorKind kind_;
  std::vector<Witness> witnesses_;
};

enum class Status { Pass, Fail, SampledPass };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::SampledPass: return "sampled-pass";
  }
  return "unknown";
}

/// Structured pass/fail evidence. A failing report always carries at least
/// one witness tuple, and each witness re-verifies as a violation.
struct VerificationReport {
  std::string check;
  Status status = Status::Pass;
  std::vector<Witness> witnesses;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::string detail;

  bool passed() const { return status != Status::Fail; }
  bool sampled() const { return status == Status::SampledPass; }

  void fail(Witness w, std::string why = {}) {
    status = Status::Fail;
    ++violations;
    witnesses.push_back(std::move(w));
    if (detail.empty()) detail = std::move(why);
  }

  /// Folds another report into this one (used for multi-part checks).
  void absorb(const VerificationReport& other) {
    checked += other.checked;
    violations += other.violations;
    if (other.status == Status::Fail) {
      status = Status::Fail;
      for (const auto& w : other.witnesses) witnesses.push_back(w);
      if (detail.empty()) detail = other.check + ": " + other.detail;
    } else if (other.status == Status::SampledPass && status == Status::Pass) {
      status = Status::SampledPass;
    }
  }
};

/// Either a validated value or the report explaining why validation failed.
template <class T>
class Checked {
 public:
  static Checked ok(T value, VerificationReport report) {
    Checked c;
    c.value_ = std::move(value);
    c.report_ = std::move(report);
    return c;
  }
  static Checked failed(VerificationReport report) {
    Checked c;
    c.report_ = std::move(report);
    return c;
  }

  bool has_value() const { return value_.has_value(); }
  explicit operator bool() const { return has_value(); }

  const T& value() const {
    if (!value_) throw Error(ErrorKind::ValidationError, report_.check + ": " + report_.detail, report_.witnesses);
    return *value_;
  }
  const VerificationReport& report() const { return report_; }

 private:
  std::optional<T> value_;
  VerificationReport report_;
};

/// Cost policy for exhaustive checks over pairs and triples: exhaustive up to
/// `exhaustive_limit` elements, otherwise 10*n^2 uniformly sampled tuples
/// drawn from a fixed seed.
struct CheckPolicy {
  std::size_t exhaustive_limit = 512;
  std::uint64_t seed = 0;
  std::size_t max_witnesses = 8;
  bool force_sampling = false;

  bool exhaustive_for(std::size_t n) const { return !force_sampling && n <= exhaustive_limit; }
};

/// Visits every pair (a,b) in lexicographic order, or a fixed-seed sample of
/// 10*n^2 pairs. `ok(a,b)` returns false on a violation. Scanning stops once
/// `max_witnesses` violations have been collected, so exhaustive witnesses
/// are the lexicographically smallest ones.
template <class Pred>
void scan_pairs(std::size_t n, const CheckPolicy& policy, VerificationReport& report, Pred&& ok) {
  auto visit = [&](Elem a, Elem b) {
    ++report.checked;
    if (!ok(a, b)) {
      report.fail({a, b});
      return report.witnesses.size() < policy.max_witnesses;
    }
    return true;
  };
  if (policy.exhaustive_for(n)) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        if (!visit(a, b)) return;
    return;
  }
  std::mt19937_64 rng(policy.seed);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
  const std::uint64_t samples = 10ULL * n * n;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Elem a = pick(rng), b = pick(rng);
    if (!visit(a, b)) return;
  }
  if (report.status == Status::Pass) report.status = Status::SampledPass;
}

/// Triple analogue of scan_pairs.
template <class Pred>
void scan_triples(std::size_t n, const CheckPolicy& policy, VerificationReport& report, Pred&& ok) {
  auto visit = [&](Elem a, Elem b, Elem c) {
    ++report.checked;
    if (!ok(a, b, c)) {
      report.fail({a, b, c});
      return report.witnesses.size() < policy.max_witnesses;
    }
    return true;
  };
  if (policy.exhaustive_for(n)) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (!visit(a, b, c)) return;
    return;
  }
  std::mt19937_64 rng(policy.seed);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
  const std::uint64_t samples = 10ULL * n * n;
  for (std::uint64_t s = 0; s < samples; ++s) {
    Elem a = pick(rng), b = pick(rng), c = pick(rng);
    if (!visit(a, b, c)) return;
  }
  if (report.status == Status::Pass) report.status = Status::SampledPass;
}

}  // namespace bracelab
