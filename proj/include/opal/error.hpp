#pragma once

#include <stdexcept>
#include <string>

namespace opal {

// Every failure mode carries a stable code so the CLI can report it verbatim.
enum class errc {
    validation,
    window_too_narrow,
    composition_nonzero,
    degree_mismatch,
    color_mismatch,
    shape_mismatch,
    not_augmented,
    not_connected,
    not_composable,
    mc_violation,
    external_edge,
    mismatched_edge,
    inconsistent_labels,
    unknown_name,
    parse_error,
    triangle_violation,
    bad_witness,
    source_mismatch,
    no_unit_color,
    invalid_object,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void check(bool ok, errc code, const std::string& what) {
    if (!ok) fail(code, what);
}

} // namespace opal
