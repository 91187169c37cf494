#pragma once

#include <stdexcept>
#include <string>

namespace chernshift {

class DegenerateGapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularPointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// |Delta| below threshold: the sheet's surface-mode pole was hit exactly.
class ResonanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ToleranceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chernshift
