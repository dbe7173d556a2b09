#ifndef TODA_ERRORS_HPP
#define TODA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toda {

// A non-finite value appeared during time stepping.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(long step, const std::string& what)
        : std::runtime_error(what), step_(step) {}
    long step() const { return step_; }

private:
    long step_;
};

// Denominator of a relative error vanished (reference equals background).
class DegenerateReference : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace toda

#endif
