#ifndef QDYN_ERROR_HPP
#define QDYN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace qdyn {

enum class ErrorKind {
  UnknownAlgebra,
  DimensionMismatch,
  NotAPermutation,
  NotDecomposable,
  BadSpin,
  UnsupportedRank,
  AlgebraMismatch,
  InvalidOrdering,
  NegativeN,
  NotNilpotent,
  DegenerateBase,
  InconsistentRatio,
  AllDenominatorsSmall,
  ResonantParameter,
  NotConverged,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownAlgebra: return "UnknownAlgebra";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::NotDecomposable: return "NotDecomposable";
    case ErrorKind::BadSpin: return "BadSpin";
    case ErrorKind::UnsupportedRank: return "UnsupportedRank";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::InvalidOrdering: return "InvalidOrdering";
    case ErrorKind::NegativeN: return "NegativeN";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::DegenerateBase: return "DegenerateBase";
    case ErrorKind::InconsistentRatio: return "InconsistentRatio";
    case ErrorKind::AllDenominatorsSmall: return "AllDenominatorsSmall";
    case ErrorKind::ResonantParameter: return "ResonantParameter";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

}  // namespace qdyn

#endif  // QDYN_ERROR_HPP
