#pragma once

#include <stdexcept>
#include <string>

namespace opstat {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int col)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line(line), col(col) {}
  int line;
  int col;
};

class UnknownSymbolError : public Error {
public:
  using Error::Error;
};

class SortError : public Error {
public:
  using Error::Error;
};

class NotQuantifierFreeError : public Error {
public:
  using Error::Error;
};

class NotGroundError : public Error {
public:
  using Error::Error;
};

class NonArithmeticError : public Error {
public:
  using Error::Error;
};

class ArithmeticSymbolError : public Error {
public:
  using Error::Error;
};

class UnassignedAtomError : public Error {
public:
  using Error::Error;
};

class RewriteBudgetError : public Error {
public:
  using Error::Error;
};

class EmptySortUniverseError : public Error {
public:
  using Error::Error;
};

class IndexOutOfRangeError : public Error {
public:
  using Error::Error;
};

class InputError : public Error {
public:
  using Error::Error;
};

}  // namespace opstat
