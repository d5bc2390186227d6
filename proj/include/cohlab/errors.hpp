#pragma once

#include <stdexcept>
#include <string>

#include "cohlab/nat.hpp"

namespace cohlab {

/// Base for every domain error this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class EncodeError : public Error {
 public:
  using Error::Error;
};

/// A program-backed predicate ran past its internal step budget. This is a
/// hard error: oracles must be total on every value they are asked about.
class OracleBudgetError : public Error {
 public:
  using Error::Error;
};

/// A halting question at the configured cap came back neither halted nor
/// loop-certified, in a context that requires a definite answer.
class UndecidableAtCap : public Error {
 public:
  explicit UndecidableAtCap(const std::string& what) : Error(what) {}
};

/// A wtt run exceeded its declared step-and-use bound.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

/// An approximation was queried for its limit before it settled.
class Unstable : public Error {
 public:
  using Error::Error;
};

class NotATree : public Error {
 public:
  NotATree(const std::string& offending, const std::string& what)
      : Error(what), offending_(offending) {}
  const std::string& offending() const { return offending_; }

 private:
  std::string offending_;
};

class DeadEnd : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  SearchExhausted(u64 stage, const std::string& what) : Error(what), stage_(stage) {}
  u64 stage() const { return stage_; }

 private:
  u64 stage_;
};

class NotCohesive : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace cohlab
