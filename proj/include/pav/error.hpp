#pragma once

#include <stdexcept>
#include <string>

namespace pav {

/// Failure categories surfaced by the library. The CLI maps these onto its
/// process exit codes, so the set is part of the tool contract.
enum class errc {
  non_square,
  singular,
  not_skew,
  odd_dimension,
  invalid_type,
  pairing_violation,
  integrality_failure,
  shape_mismatch,
  generator_mismatch,
  odd_degree_input,
  rank_mismatch,
  not_symmetric,
  not_positive,
  ill_conditioned,
  convention_mismatch,
  bound_too_large,
  invalid_input,
  internal,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::non_square: return "non_square";
    case errc::singular: return "singular";
    case errc::not_skew: return "not_skew";
    case errc::odd_dimension: return "odd_dimension";
    case errc::invalid_type: return "invalid_type";
    case errc::pairing_violation: return "pairing_violation";
    case errc::integrality_failure: return "integrality_failure";
    case errc::shape_mismatch: return "shape_mismatch";
    case errc::generator_mismatch: return "generator_mismatch";
    case errc::odd_degree_input: return "odd_degree_input";
    case errc::rank_mismatch: return "rank_mismatch";
    case errc::not_symmetric: return "not_symmetric";
    case errc::not_positive: return "not_positive";
    case errc::ill_conditioned: return "ill_conditioned";
    case errc::convention_mismatch: return "convention_mismatch";
    case errc::bound_too_large: return "bound_too_large";
    case errc::invalid_input: return "invalid_input";
    case errc::internal: return "internal";
  }
  return "unknown";
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  errc code() const { return code_; }

private:
  errc code_;
};

}  // namespace pav
