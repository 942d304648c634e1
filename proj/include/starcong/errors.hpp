#pragma once

#include <stdexcept>
#include <string>

namespace starcong {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// NaN/Inf entries, malformed text, or a violated precondition on an argument.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

class NotHermitian : public Error {
public:
    using Error::Error;
};

/// A classification decision fell inside the refusal band around a
/// strata boundary. `what()` names the test and the two contending branches.
class AmbiguousClassification : public Error {
public:
    AmbiguousClassification(std::string test, std::string branch_a, std::string branch_b,
                            double margin);

    const std::string& test() const { return test_; }
    const std::string& branch_a() const { return branch_a_; }
    const std::string& branch_b() const { return branch_b_; }
    double margin() const { return margin_; }

private:
    std::string test_;
    std::string branch_a_;
    std::string branch_b_;
    double margin_;
};

class DuplicateVertex : public Error {
public:
    using Error::Error;
};

class DegenerateDelta : public Error {
public:
    using Error::Error;
};

class ArrowExists : public Error {
public:
    using Error::Error;
};

class CertificateNotFound : public Error {
public:
    using Error::Error;
};

}  // namespace starcong
