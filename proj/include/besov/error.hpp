#pragma once

#include <stdexcept>
#include <string>

namespace besov {

// Base for every error raised by the library. The CLI maps these to exit 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric parameter is outside its admissible range (p < 1, r_j <= 0, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// Two grids that must share axes do not.
class ShapeError : public Error {
public:
    using Error::Error;
};

// A section box reaches past the grid's Nyquist frequency on some axis.
class NyquistError : public Error {
public:
    using Error::Error;
};

// Input data violates a precondition (non-finite samples, band check, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace besov
