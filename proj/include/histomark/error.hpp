#pragma once

#include <stdexcept>
#include <string>

namespace histomark {

enum class ErrorCode {
    Io,               // file missing, unreadable, unwritable
    Format,           // malformed or unsupported file contents
    InvalidArgument,  // precondition violated by a caller-supplied value
    Capacity,         // image cannot carry the requested payload
    DegenerateGroup,  // a bin group holds no pixels at all
    SelfCheck,        // embedded mark does not read back
    SidecarVersion,   // sidecar written by an incompatible format version
    BadAttackSpec,    // unknown attack kind or out-of-range magnitude
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace histomark
