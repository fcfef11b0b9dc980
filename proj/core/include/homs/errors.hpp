#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homs {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration value (bad tolerance, bin size, dimensionality...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Text input that does not follow the documented grammar. Carries the
/// 1-based line number of the offending line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Stream is not a cache file at all (wrong magic or unsupported version).
class CacheFormatError : public Error {
 public:
  using Error::Error;
};

/// Cache was built with different parameters than the current run requests.
class StaleCacheError : public Error {
 public:
  using Error::Error;
};

/// Cache is damaged: truncated stream or checksum mismatch.
class CacheCorruptError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition or invariant was violated by the caller.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure (cannot open, cannot write).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace homs
