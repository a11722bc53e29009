#pragma once

#include <stdexcept>
#include <string>

namespace tccc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedCone : public Error {
public:
    using Error::Error;
};

class IncompleteFan : public Error {
public:
    using Error::Error;
};

class AmpleRequired : public Error {
public:
    using Error::Error;
};

class RefinementRequired : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class PathConstructionError : public Error {
public:
    using Error::Error;
};

class NotAChainMap : public Error {
public:
    using Error::Error;
};

class Unsupported : public Error {
public:
    using Error::Error;
};

/// Malformed user input (files, JSON, command line values).
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace tccc
