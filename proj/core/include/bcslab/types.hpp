#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace bcslab {

using Index = Eigen::Index;
using Real = double;
using Complex = std::complex<double>;

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Base class for all numeric failures raised by the library.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

class SingularMatrix : public NumericError {
public:
    explicit SingularMatrix(const std::string& what) : NumericError(what) {}
};

class NoConvergence : public NumericError {
public:
    explicit NoConvergence(const std::string& what) : NumericError(what) {}
};

/// Raised when a frequency-domain solve hits a (numerical) eigenvalue.
class SingularAtLambda : public NumericError {
public:
    explicit SingularAtLambda(const std::string& what) : NumericError(what) {}
};

/// Raised when a boundary trace operator loses row rank.
class RankDeficientBoundary : public NumericError {
public:
    explicit RankDeficientBoundary(const std::string& what) : NumericError(what) {}
};

class IllConditionedFit : public NumericError {
public:
    explicit IllConditionedFit(const std::string& what) : NumericError(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Space names carried along with a node, purely descriptive.
struct SpaceLabels {
    std::string boundary_input = "Ub";
    std::string input = "U";
    std::string state = "X";
    std::string output = "Y";
};

}  // namespace bcslab
