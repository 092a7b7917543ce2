#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ideoarith {

// Library-wide error type.  Every failure carries a stable machine-readable
// code (e.g. "IndexOutOfRange") so callers and the CLI can dispatch on it
// without parsing prose.
class IdeoError : public std::runtime_error {
public:
    IdeoError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void raise(const std::string& code, const std::string& what) {
    throw IdeoError(code, what);
}

}  // namespace ideoarith
