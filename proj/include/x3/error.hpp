#pragma once

#include <stdexcept>
#include <string>

namespace x3 {

//! Base class for every error raised by this library.
struct Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

//! Container framing problems: wrong magic bytes or an unsupported version.
struct FormatError : public Error {
    using Error::Error;
};

//! A payload that cannot be decoded back into a valid event stream.
struct CorruptError : public Error {
    using Error::Error;
};

//! The input would grow the fragment dictionary past the coder's index budget.
struct CapExceededError : public Error {
    using Error::Error;
};

//! Failure to read or write a file (CLI layer).
struct IoError : public Error {
    using Error::Error;
};

}  // namespace x3
