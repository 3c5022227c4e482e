#pragma once

#include <stdexcept>
#include <string>

namespace gconf {

/// Raised for invalid input documents, arguments outside an operation's
/// domain, and failed preconditions that the caller can act on.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gconf
