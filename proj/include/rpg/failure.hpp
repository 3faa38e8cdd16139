#pragma once
// Algorithmic failures: finite-n situations where a choice the asymptotic
// argument guarantees does not exist. Raised inside a pipeline and turned into
// a Failure record at its boundary; never a crash.

#include <optional>
#include <stdexcept>
#include <string>

namespace rpg {

class AlgoFailure : public std::runtime_error {
public:
    AlgoFailure(std::string stage, std::string reason)
        : std::runtime_error(stage + ": " + reason), stage_(std::move(stage)), reason_(std::move(reason)) {}
    const std::string& stage() const { return stage_; }
    const std::string& reason() const { return reason_; }

private:
    std::string stage_, reason_;
};

struct Failure {
    std::optional<int> k;  // empty for failures before extraction
    std::string stage;
    std::string reason;
};

}  // namespace rpg
