#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace polya {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class AsymmetricAdjacencyError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public Error {
 public:
  DisconnectedGraphError(std::string message,
                         std::vector<std::vector<std::size_t>> components)
      : Error(std::move(message)), components_(std::move(components)) {}

  // Connected components as 0-based node lists.
  const std::vector<std::vector<std::size_t>>& components() const noexcept {
    return components_;
  }

 private:
  std::vector<std::vector<std::size_t>> components_;
};

// Some super urn (or individual-urn-dependent quantity) is empty.
class EmptyUrnError : public Error {
 public:
  using Error::Error;
};

// Exact enumeration would exceed the configured path cap.
class EnumerationCapError : public Error {
 public:
  using Error::Error;
};

}  // namespace polya
