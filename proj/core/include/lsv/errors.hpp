#pragma once

#include <stdexcept>
#include <string>

namespace lsv {

/// Thrown when a point lies deeper in the marker tail than the table resolves.
/// The caller should rebuild the table with a larger n_max; results are never
/// silently truncated.
class TailOverflow : public std::runtime_error {
public:
    explicit TailOverflow(const std::string& what) : std::runtime_error(what) {}
};

/// Newton or power iteration failed to reach tolerance within the iteration cap.
class ConvergenceFailure : public std::runtime_error {
public:
    explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace lsv
