#pragma once

#include <stdexcept>
#include <string>

namespace invclust {

// Base for every error raised by the library. Callers that only need a
// message can catch this; the subclasses carry structured fields.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int col, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + message),
        line_(line), col_(col), message_(message) {}

  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int col_;
  std::string message_;
};

class UnsupportedFeature : public Error {
 public:
  UnsupportedFeature(std::string construct, int line)
      : Error(std::to_string(line) + ": unsupported construct: " + construct),
        construct_(std::move(construct)), line_(line) {}

  const std::string& construct() const { return construct_; }
  int line() const { return line_; }

 private:
  std::string construct_;
  int line_;
};

class UnresolvedIdentifier : public Error {
 public:
  UnresolvedIdentifier(std::string name, int line)
      : Error(std::to_string(line) + ": unresolved identifier '" + name + "'"),
        name_(std::move(name)), line_(line) {}

  const std::string& name() const { return name_; }
  int line() const { return line_; }

 private:
  std::string name_;
  int line_;
};

class UnmappedPoint : public Error {
 public:
  explicit UnmappedPoint(const std::string& point)
      : Error("program point has no counterpart: " + point) {}
};

class EmptyCorpus : public Error {
 public:
  explicit EmptyCorpus(const std::string& what) : Error("empty corpus: " + what) {}
};

class ModeMismatch : public Error {
 public:
  using Error::Error;
};

class KTooLarge : public Error {
 public:
  KTooLarge(std::size_t k, std::size_t n)
      : Error("k=" + std::to_string(k) + " exceeds number of vectors " + std::to_string(n)) {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingLabel : public Error {
 public:
  explicit MissingLabel(const std::string& id) : Error("no label for program '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class EmptyCandidates : public Error {
 public:
  EmptyCandidates() : Error("closest-program query needs at least one candidate") {}
};

class MissingTests : public Error {
 public:
  explicit MissingTests(const std::string& assignment)
      : Error("no test suite for assignment '" + assignment + "'"), assignment_(assignment) {}
  const std::string& assignment() const { return assignment_; }

 private:
  std::string assignment_;
};

}  // namespace invclust
