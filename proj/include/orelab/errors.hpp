#pragma once

#include <stdexcept>
#include <string>

namespace orelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation exceeded a configured order or lattice cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  NotNormal() : Error("subgroup is not normal") {}
  using Error::Error;
};

class BadAction : public Error {
 public:
  using Error::Error;
};

// A table or lattice violated a structural law; law() names it.
class InvalidGroup : public Error {
 public:
  InvalidGroup(std::string law, const std::string& detail)
      : Error("invalid (" + law + "): " + detail), law_(std::move(law)) {}
  const std::string& law() const { return law_; }

 private:
  std::string law_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t field, const std::string& what)
      : Error("parse error at line " + std::to_string(line) + ", field " + std::to_string(field) +
              ": " + what),
        line_(line),
        field_(field) {}
  std::size_t line() const { return line_; }
  std::size_t field() const { return field_; }

 private:
  std::size_t line_;
  std::size_t field_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace orelab
