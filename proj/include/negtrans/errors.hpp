#pragma once

#include <stdexcept>
#include <string>

namespace negtrans {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// dimension mismatch between a matrix and the shape that labels it
class ShapeError : public Error {
public:
    using Error::Error;
};

// input outside the mathematical domain of an operation (non-Hermitian, singular, r > 1, ...)
class DomainError : public Error {
public:
    using Error::Error;
};

// a user-supplied object violates an invariant (density matrix, scenario file)
class ValidationError : public Error {
public:
    using Error::Error;
};

// formula exists but the scenario is outside the regime where it applies
class RegimeError : public Error {
public:
    using Error::Error;
};

// non-degenerate perturbation requested on a (near-)degenerate spectrum
class GapError : public Error {
public:
    using Error::Error;
};

// product-form separability certificate cannot be constructed for this Hamiltonian
class NoCertificateError : public Error {
public:
    using Error::Error;
};

}  // namespace negtrans
