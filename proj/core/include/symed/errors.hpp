#pragma once

#include <stdexcept>
#include <string>

namespace symed {

/// A non-finite value showed up in an input stream.
class StreamCorruptionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Frames arrived out of contract (bad order, missing START, ...).
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A byte buffer could not be decoded as a frame.
class FramingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dataset file could not be parsed; message names the offending line.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace symed
