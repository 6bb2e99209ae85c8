#pragma once

#include <stdexcept>
#include <string>

namespace teachml {

// Problems with input data, model files or other user-supplied content.
// The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid configuration or command usage. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// A pipeline stage failed; carries the stage name plus the original cause.
class PipelineError : public DataError {
public:
    PipelineError(const std::string& stage, const std::string& cause)
        : DataError("stage '" + stage + "': " + cause), stage_(stage) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

}  // namespace teachml
