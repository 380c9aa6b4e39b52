#pragma once

#include <stdexcept>
#include <string>

namespace fusionforge {

/// All library failures carry a short machine-readable code ("NotCoprime",
/// "NonIntegerFusion", ...) next to the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace fusionforge
