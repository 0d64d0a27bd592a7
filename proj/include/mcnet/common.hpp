#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mcnet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (edge lists, params files, reports).
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Caller violated a precondition (wrong sizes, values outside the cube, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure did not reach its target.
class NumericalError : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

inline void require_size(Index got, Index expected, const char* what) {
  if (got != expected) {
    throw DomainError(std::string(what) + ": length " + std::to_string(got) +
                      " does not match node count " + std::to_string(expected));
  }
}

}  // namespace mcnet
