#pragma once

#include <stdexcept>
#include <string>

namespace gcsim {

// Syntax errors from the netlist readers. line is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Structural problems in a circuit or a garbled-circuit container
// (duplicate driver, cycle, bad wire id, malformed blob, ...).
class CircuitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violations of the two-party session: unexpected message type, framing
// or length mismatch, mode mismatch, bad group element, forged label.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OtError : public ProtocolError {
public:
    using ProtocolError::ProtocolError;
};

// Authentication failure when checking a masked-output tag.
class MacError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gcsim
