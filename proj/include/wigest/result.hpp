#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>

namespace wigest {

enum class ErrorCode {
  kOk = 0,
  kInvalidArgument,
  kMalformedLine,
  kNonMonotonicTimestamp,
  kSubcarrierCountMismatch,
  kMissingMeta,
  kEmptyTrace,
  kTooFewPoints,
  kGapTooLarge,
  kSignalTooShort,
  kInsufficientQuietSignal,
  kTooFewPeaks,
  kBadKind,
  kBadRange,
  kOutOfOrderEvent,
  kZeroDuration,
  kMissingLabels,
  kIo,
};

const char *ErrorCodeName(ErrorCode code);

struct Error {
  ErrorCode code{ErrorCode::kInvalidArgument};
  std::string message{};
  // Line number for parse errors, start timestamp for GapTooLarge.
  std::int64_t where{0};
  // Gap length for GapTooLarge.
  std::int64_t extent{0};
};

template <typename T> class Result {
public:
  Result(T value) : data_(std::move(value)) {}
  Result(Error error) : data_(std::move(error)) {}

  [[nodiscard]] bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  T &value() & { return std::get<T>(data_); }
  const T &value() const & { return std::get<T>(data_); }
  T &&value() && { return std::get<T>(std::move(data_)); }
  const Error &error() const { return std::get<Error>(data_); }

  T *operator->() { return &value(); }
  const T *operator->() const { return &value(); }
  T &operator*() & { return value(); }
  const T &operator*() const & { return value(); }

private:
  std::variant<T, Error> data_;
};

struct Ok {};
using Status = Result<Ok>;

inline Error MakeError(ErrorCode code, std::string message, std::int64_t where = 0,
                       std::int64_t extent = 0) {
  return Error{code, std::move(message), where, extent};
}

} // namespace wigest
