#ifndef NCTK_ERROR_H_
#define NCTK_ERROR_H_

#include <stdexcept>
#include <string>

namespace nctk {

// Base class for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lexical resource or data file could not be read.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Malformed input data (bad TSV row, untagged token, missing prediction).
class InputError : public Error {
 public:
  using Error::Error;
};

// A word has no concept under the active scheme.
class UnknownWordError : public Error {
 public:
  explicit UnknownWordError(const std::string& word)
      : Error("unknown word: " + word), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

// A caller-supplied argument is outside the operation's domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// The requested computation is outside the supported numeric range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// The model configuration is not covered by the derivation being applied.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

// A statistic is undefined for the supplied values.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace nctk

#endif  // NCTK_ERROR_H_
