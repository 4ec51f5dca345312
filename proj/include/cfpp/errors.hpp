#pragma once

#include <stdexcept>
#include <string>

namespace cfpp {

/// Invalid argument or parameter outside its admissible range.
/// The message names the offending quantity.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A series or iterative evaluation left its supported numerical regime
/// (argument too large for the series, or no convergence within the
/// configured term budget).
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw domain_error(msg);
}

}  // namespace detail

}  // namespace cfpp
