#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cr3kit/point.hpp"

namespace cr3kit {

// Base for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Division by a jet with zero constant term.
class DegenerateJet : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  DomainError(const std::string& what, double offending)
      : Error(what + " (value " + std::to_string(offending) + ")"), value_(offending) {}
  double value() const { return value_; }

 private:
  double value_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& message() const { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// A custom chart was requested without an explicit connection potential.
class NotIntegrated : public Error {
 public:
  using Error::Error;
};

// The CR-Reeb reduction of the Tanaka curvature does not apply at a point.
class ReductionInvalid : public Error {
 public:
  ReductionInvalid(const std::string& what, Point where, double defect)
      : Error(what), where_(where), defect_(defect) {}
  Point where() const { return where_; }
  double defect() const { return defect_; }

 private:
  Point where_;
  double defect_;
};

class NonPositive : public Error {
 public:
  NonPositive(const std::string& what, Point where, double value)
      : Error(what), where_(where), value_(value) {}
  Point where() const { return where_; }
  double value() const { return value_; }

 private:
  Point where_;
  double value_;
};

class ContactDegenerate : public Error {
 public:
  ContactDegenerate(const std::string& what, Point worst, double volume)
      : Error(what), worst_(worst), volume_(volume) {}
  Point worst() const { return worst_; }
  // Value of eta' ^ d eta' on (dx, dy, dt) at the worst point.
  double volume() const { return volume_; }

 private:
  Point worst_;
  double volume_;
};

class NonCompactCell : public Error {
 public:
  using Error::Error;
};

}  // namespace cr3kit
