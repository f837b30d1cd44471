#pragma once

#include <stdexcept>
#include <string>

namespace titskit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ZeroNormal : public Error {
 public:
  ZeroNormal() : Error("hyperplane normal is zero") {}
};

class DuplicateHyperplane : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotAFace : public Error {
 public:
  using Error::Error;
};

class NotComparable : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class LatticeNotGraded : public Error {
 public:
  using Error::Error;
};

class ScalarMismatch : public Error {
 public:
  using Error::Error;
};

class WrongFamily : public Error {
 public:
  using Error::Error;
};

class GenericDegenerate : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace titskit
