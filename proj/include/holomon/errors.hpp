#pragma once

#include <stdexcept>
#include <string>

namespace holomon {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonHermitianInput : public Error {
public:
    using Error::Error;
};

class DimMismatch : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

class InvalidEpsilon : public Error {
public:
    using Error::Error;
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

// Postselection branch with (numerically) zero probability cannot be renormalized.
class ZeroNormBranch : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace holomon
