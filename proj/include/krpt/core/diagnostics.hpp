#ifndef KRPT_CORE_DIAGNOSTICS_HPP
#define KRPT_CORE_DIAGNOSTICS_HPP

#include <functional>
#include <string>

namespace krpt::diag {

using Sink = std::function<void(const std::string&)>;

/// Emits a warning through the installed sink (stderr by default). Thread-safe.
void warn(const std::string& message);

/// Replaces the warning sink and returns the previous one. Pass nullptr to silence.
Sink set_sink(Sink sink);

}  // namespace krpt::diag

#endif  // KRPT_CORE_DIAGNOSTICS_HPP
