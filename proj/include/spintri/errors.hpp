#pragma once

#include <stdexcept>
#include <string>

namespace spintri {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ComplexRootsError : public Error {
public:
    using Error::Error;
};

class DegenerateRootsError : public Error {
public:
    using Error::Error;
};

class CollinearError : public Error {
public:
    using Error::Error;
};

class EquilateralError : public Error {
public:
    using Error::Error;
};

class InconsistentConservedValues : public Error {
public:
    using Error::Error;
};

class CriticalPointSingularity : public Error {
public:
    using Error::Error;
};

class NotGenericError : public Error {
public:
    using Error::Error;
};

class NoPhaseMatch : public Error {
public:
    using Error::Error;
};

class RefinementRequired : public Error {
public:
    using Error::Error;
};

class AreaAmbiguity : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

class NotOnBoundary : public Error {
public:
    using Error::Error;
};

class StepSizeUnderflow : public Error {
public:
    using Error::Error;
};

}  // namespace spintri
