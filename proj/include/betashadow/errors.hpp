// Error taxonomy shared by every module. Each failure carries a code so the
// CLI can map it onto a stable process exit status.
#pragma once

#include <stdexcept>
#include <string>

namespace betashadow {

enum class errc {
    invalid_params,
    out_of_domain,
    index_out_of_range,
    empty_sequence,
    not_found,
    epsilon_too_large,
    wrong_case,
    not_transitive,
    piece_explosion,
    no_stabilization,
    is_transitive,
    verification_failed,
    depth_exceeded,
    point_outside_j,
    parse_error,
};

inline const char* errc_name(errc c)
{
    switch (c) {
    case errc::invalid_params:      return "InvalidParams";
    case errc::out_of_domain:       return "OutOfDomain";
    case errc::index_out_of_range:  return "IndexOutOfRange";
    case errc::empty_sequence:      return "EmptySequence";
    case errc::not_found:           return "NotFound";
    case errc::epsilon_too_large:   return "EpsilonTooLarge";
    case errc::wrong_case:          return "WrongCase";
    case errc::not_transitive:      return "NotTransitive";
    case errc::piece_explosion:     return "PieceExplosion";
    case errc::no_stabilization:    return "NoStabilization";
    case errc::is_transitive:       return "IsTransitive";
    case errc::verification_failed: return "VerificationFailed";
    case errc::depth_exceeded:      return "DepthExceeded";
    case errc::point_outside_j:     return "PointOutsideJ";
    case errc::parse_error:         return "ParseError";
    }
    return "UnknownError";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code)
    {
    }

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg)
{
    throw error(code, msg);
}

// Process exit conventions: 0 success, 1 checked property failed,
// 2 invalid input, 3 resource cap hit.
inline int exit_code_for(errc c)
{
    switch (c) {
    case errc::not_found:
    case errc::piece_explosion:
    case errc::no_stabilization:
    case errc::depth_exceeded:
        return 3;
    case errc::verification_failed:
        return 1;
    default:
        return 2;
    }
}

} // namespace betashadow
