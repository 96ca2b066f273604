#ifndef EDGESAMPLE_ERRORS_HPP
#define EDGESAMPLE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace edgesample {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (edge lists, config files, prior CSVs).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Argument outside its documented domain (p not in (0,1], k > n, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Request exceeds what the routine can represent or enumerate.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A posterior has no mass for some observed item.
class EstimationError : public Error {
 public:
  using Error::Error;
};

// A prior-construction procedure cannot satisfy its constraints.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Truth and estimate sequences are not index-aligned.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace edgesample

#endif  // EDGESAMPLE_ERRORS_HPP
