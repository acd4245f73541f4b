#pragma once

#include <stdexcept>
#include <string>

namespace padic {

enum class Errc {
    bad_prime,
    zero_argument,
    zero_vector,
    dimension_mismatch,
    not_integral,
    pivot_not_unit,
    degree_mismatch,
    not_a_morphism,
    parse_error,
    bad_strategy,
    bad_range,
    internal,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace padic
