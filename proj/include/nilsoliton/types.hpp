#ifndef NILSOLITON_TYPES_HPP
#define NILSOLITON_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace nilsoliton {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// An endomorphism of the fixed basis e_1..e_n (elements of gl(n), GL(n), Der).
using Operator = MatrixX<double>;
using Vector = VectorX<double>;

/// Numeric thresholds used to turn residuals into yes/no answers.
struct Tolerances {
  /// Relative singular-value cutoff for rank and kernel decisions.
  double rank = 1e-9;
  /// Residual cutoff for structure predicates (J^2 = -I, integrability, ...).
  double structure = 1e-10;
  /// Residual cutoff for minimality on scal = -1 normalized brackets.
  double minimal = 1e-9;
  /// Max-norm gap between sorted Ricci spectra that counts as "different".
  double spectrum = 1e-8;
};

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  /// Stable machine-readable identifier, e.g. "SingularOperator".
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define NILSOLITON_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  };

NILSOLITON_DEFINE_ERROR(InvalidTerm)
NILSOLITON_DEFINE_ERROR(SingularOperator)
NILSOLITON_DEFINE_ERROR(NotTwoStepSplit)
NILSOLITON_DEFINE_ERROR(WrongKind)
NILSOLITON_DEFINE_ERROR(BadAlmostComplex)
NILSOLITON_DEFINE_ERROR(InvalidBracket)
NILSOLITON_DEFINE_ERROR(ZeroBracket)
NILSOLITON_DEFINE_ERROR(NotIntegrable)
NILSOLITON_DEFINE_ERROR(NotMinimal)
NILSOLITON_DEFINE_ERROR(AbelianDerivation)
NILSOLITON_DEFINE_ERROR(NonPositiveTrace)
NILSOLITON_DEFINE_ERROR(DomainError)
NILSOLITON_DEFINE_ERROR(LoadError)

#undef NILSOLITON_DEFINE_ERROR

}  // namespace nilsoliton

#endif  // NILSOLITON_TYPES_HPP
