#ifndef NITSCHE_ERRORS_HPP
#define NITSCHE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nitsche {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (radius out of range, bad parameter).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Coefficient growth would overflow double precision on the annulus.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Malformed AHM/BHM input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Requested annuli violate the Nitsche bound; carries ½(R+1/R) − R*.
class NoHarmonicHomeomorphism : public DomainError {
 public:
  explicit NoHarmonicHomeomorphism(double deficit)
      : DomainError("no harmonic homeomorphism: Nitsche bound violated by " +
                    std::to_string(deficit)),
        deficit_(deficit) {}
  double deficit() const { return deficit_; }

 private:
  double deficit_;
};

/// The map cannot be lifted to a minimal graph (odd-order zero or no single-valued w).
class NoLift : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where a quotient is undefined (h_z = 0 for μ).
class SingularPoint : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace nitsche

#endif
