#pragma once

#include <stdexcept>
#include <string>

namespace pvtag {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value violates a type invariant or a configuration rule.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its mathematical or tested domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace pvtag
