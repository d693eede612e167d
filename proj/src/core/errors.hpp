#ifndef DNAIDS_CORE_ERRORS_HPP
#define DNAIDS_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dnaids {

// Coarse failure categories; the C API maps these 1:1 onto status codes
// and the CLI maps them onto exit codes.
enum class ErrorCode {
    Argument,     // null/invalid argument, bad configuration value
    Io,           // missing, unreadable or unwritable file
    Parse,        // malformed schema/taxonomy/data/db/model content
    Range,        // out-of-range request (prefix size, series size, index)
    Fingerprint,  // encoder fingerprint does not match
    Capacity,     // symbolic feature exceeds codebook capacity
    Contract,     // precondition violation (length mismatch, empty dataset, ...)
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, std::string message) {
    throw Error(code, std::move(message));
}

} // namespace dnaids

#endif
