#pragma once

#include <stdexcept>
#include <string>

namespace sglab {

enum class errc {
    not_prime,
    too_large,
    not_a_divisor,
    zero_dilation,
    field_mismatch,
    bad_arity,
    empty_set,
    support_violation,
    not_invariant,
    not_hermitian,
    hypothesis_violation,
    bad_shifts,
    too_large_for_exhaustive,
    empty_config,
    limit_exceeded,
};

const char* errc_name(errc c);

// Every precondition failure in the library throws this with a stable code,
// so callers (and tests) can match on the code instead of message text.
class sg_error : public std::runtime_error {
public:
    sg_error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw sg_error(code, what); }

} // namespace sglab
