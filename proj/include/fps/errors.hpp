#pragma once

#include <stdexcept>
#include <string>

namespace fps {

enum class errc {
    not_invertible,
    even_modulus,
    not_power_of_two,
    degenerate_direction,
    unsupported_dimension,
    out_of_range,
    not_sl2,
    degenerate_spectrum,
    variant_dimension_mismatch,
    invariant_violation,
    not_a_density_matrix,
    imaginary_residue,
    dimension_mismatch,
    not_hermitian,
    even_dimension,
    precondition_nu,
    not_in_l1,
    invalid_distribution,
    incomplete_cover,
    inconsistent_overlap,
    bad_format,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::not_invertible:             return "NotInvertible";
        case errc::even_modulus:               return "EvenModulus";
        case errc::not_power_of_two:           return "NotPowerOfTwo";
        case errc::degenerate_direction:       return "DegenerateDirection";
        case errc::unsupported_dimension:      return "UnsupportedDimension";
        case errc::out_of_range:               return "OutOfRange";
        case errc::not_sl2:                    return "NotSl2";
        case errc::degenerate_spectrum:        return "DegenerateSpectrum";
        case errc::variant_dimension_mismatch: return "VariantDimensionMismatch";
        case errc::invariant_violation:        return "InvariantViolation";
        case errc::not_a_density_matrix:       return "NotADensityMatrix";
        case errc::imaginary_residue:          return "ImaginaryResidue";
        case errc::dimension_mismatch:         return "DimensionMismatch";
        case errc::not_hermitian:              return "NotHermitian";
        case errc::even_dimension:             return "EvenDimension";
        case errc::precondition_nu:            return "PreconditionNU";
        case errc::not_in_l1:                  return "NotInL1";
        case errc::invalid_distribution:       return "InvalidDistribution";
        case errc::incomplete_cover:           return "IncompleteCover";
        case errc::inconsistent_overlap:       return "InconsistentOverlap";
        case errc::bad_format:                 return "BadFormat";
    }
    return "UnknownError";
}

// Single exception type carrying a machine-checkable code; tests and the CLI
// dispatch on code(), humans read what().
class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw error(code, message);
}

inline void require(bool cond, errc code, const std::string& message) {
    if (!cond) raise(code, message);
}

} // namespace fps
