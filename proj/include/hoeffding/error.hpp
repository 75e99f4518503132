#pragma once

#include <stdexcept>
#include <string>

namespace ht {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain an operation accepts (non-finite input,
/// probability outside (0,1), label >= K, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A serialized tree buffer could not be decoded.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Problems with input data: unreadable files, malformed CSV rows,
/// dimension mismatches between samples and a tree.
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace ht
