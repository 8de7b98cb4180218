#ifndef GBE_COMMON_HPP
#define GBE_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gbe {

// Thrown when a value escapes the closed denominator class or any other
// structural invariant breaks. Surfaced by the CLI as exit code 3.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Thrown by merge when a coinciding-point limit has a surviving pole.
class non_regular : public std::runtime_error {
public:
    explicit non_regular(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by decompose when a one-point function does not fit the
// conjectured P/y^m shape.
class not_conjecture_shape : public std::runtime_error {
public:
    explicit not_conjecture_shape(const std::string& what) : std::runtime_error(what) {}
};

#define GBE_CHECK(cond, msg)                                        \
    do {                                                            \
        if (!(cond)) throw ::gbe::internal_error(msg);              \
    } while (0)

} // namespace gbe

#endif
