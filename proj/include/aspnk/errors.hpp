#ifndef ASPNK_ERRORS_HPP
#define ASPNK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aspnk {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed program text. line is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// smodels rule types we do not accept (weight rules, minimize, disjunction).
class UnsupportedRuleError : public ParseError {
 public:
  using ParseError::ParseError;
};

class CapExceededError : public Error {
 public:
  using Error::Error;
};

// A solution's atoms do not form the structure a measure expects.
class DecodeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedMeasureError : public Error {
 public:
  using Error::Error;
};

class OptionsError : public Error {
 public:
  using Error::Error;
};

}  // namespace aspnk

#endif  // ASPNK_ERRORS_HPP
