#pragma once

#include <stdexcept>
#include <string>

namespace catclust {

// Invalid, out-of-range or mismatched mode indices.
class ModeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A scalar argument outside its documented domain (alpha <= 0, p > 3/4, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed graph, pattern or file contents.
class FormatError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A superposition whose Gram norm is at or below rounding noise.
class CancelledStateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numerical routine could not reach its accuracy target.
class AccuracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace catclust
