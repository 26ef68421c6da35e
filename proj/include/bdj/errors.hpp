#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bdj {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// ---- model construction -------------------------------------------------

class EmptyPrefix final : public Error {
public:
  EmptyPrefix() : Error("rate profile prefix is empty") {}
};

class Mu0NotZero final : public Error {
public:
  explicit Mu0NotZero(double mu)
      : Error("site 0 must have death rate 0, got " + std::to_string(mu)) {}
};

class NegativeRate final : public Error {
public:
  NegativeRate(std::int64_t site, const std::string& field)
      : Error("negative or non-finite rate at site " + std::to_string(site) +
              " (" + field + ")"),
        site_(site) {}
  std::int64_t site() const { return site_; }

private:
  std::int64_t site_;
};

class ZeroDeathRate final : public Error {
public:
  explicit ZeroDeathRate(std::int64_t site)
      : Error("death rate must be positive at site " + std::to_string(site)),
        site_(site) {}
  std::int64_t site() const { return site_; }

private:
  std::int64_t site_;
};

class ZeroTotalRate final : public Error {
public:
  explicit ZeroTotalRate(std::int64_t site)
      : Error("total jump rate is zero at site " + std::to_string(site)),
        site_(site) {}
  std::int64_t site() const { return site_; }

private:
  std::int64_t site_;
};

// ---- numerics ------------------------------------------------------------

class NoConvergence final : public Error {
public:
  explicit NoConvergence(std::int64_t iterations)
      : Error("power iteration did not converge after " +
              std::to_string(iterations) + " iterations"),
        iterations_(iterations) {}
  std::int64_t iterations() const { return iterations_; }

private:
  std::int64_t iterations_;
};

class Diverged final : public Error {
public:
  explicit Diverged(const std::string& what) : Error(what) {}
};

class BadWindow final : public Error {
public:
  explicit BadWindow(const std::string& what) : Error(what) {}
};

class NotPositiveRecurrent final : public Error {
public:
  explicit NotPositiveRecurrent(const std::string& verdict)
      : Error("model is not certified positive recurrent (classifier says: " +
              verdict + ")") {}
};

class TooSmall final : public Error {
public:
  explicit TooSmall(const std::string& what) : Error(what) {}
};

class SingularSystem final : public Error {
public:
  explicit SingularSystem(const std::string& what) : Error(what) {}
};

class ExcursionBudgetExceeded final : public Error {
public:
  explicit ExcursionBudgetExceeded(std::int64_t max_steps)
      : Error("an excursion exceeded the per-excursion step guard of " +
              std::to_string(max_steps) + " steps"),
        max_steps_(max_steps) {}
  std::int64_t max_steps() const { return max_steps_; }

private:
  std::int64_t max_steps_;
};

class NotAnExcursion final : public Error {
public:
  explicit NotAnExcursion(const std::string& what) : Error(what) {}
};

// ---- input ----------------------------------------------------------------

class ParseError final : public Error {
public:
  ParseError(std::int64_t line, std::int64_t column, const std::string& message)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::int64_t line() const { return line_; }
  std::int64_t column() const { return column_; }

private:
  std::int64_t line_;
  std::int64_t column_;
};

class SchemaError final : public Error {
public:
  explicit SchemaError(const std::string& field, const std::string& message = "")
      : Error("invalid model field '" + field + "'" +
              (message.empty() ? "" : (": " + message))),
        field_(field) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

}  // namespace bdj
