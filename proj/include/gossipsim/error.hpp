#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gossipsim {

// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid generator or simulation parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A randomized construction gave up after its retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

// generate_with_constraints could not satisfy connectivity or diameter.
class ConstraintError : public Error {
 public:
  ConstraintError(std::string constraint, std::size_t attempts)
      : Error("constraint unsatisfiable after " + std::to_string(attempts) +
              " attempts: " + constraint),
        constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

// Malformed text input; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Experiment configuration rejected; names the key (and line when known).
class ConfigError : public Error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& what)
      : Error(format(key, line, what)), key_(std::move(key)), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, std::size_t line,
                            const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + what;
  }

  std::string key_;
  std::size_t line_;
};

// Coverage or aggregation requested on an empty population.
class MetricError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace gossipsim
