#pragma once

#include <stdexcept>
#include <string>

namespace polyden {

// Input/model errors abort the operation that received bad data; assertion
// errors mean a computed invariant failed.  The CLI maps the former to exit
// code 2 and the latter to exit code 1.
enum class errc {
    empty_measure,
    validation,
    parse,
    degree_exceeds_support,
    degenerate_constraint,
    no_vanishing_sequence,
    tail_model_missing,
    multiple_zero,
    pole_at_z,
    shared_zero,
    index_out_of_range,
    insufficient_zeros,
    zero_at_origin,
    budget_violated,
    weight_vanishes,
    zero_outside_support,
    support_mismatch,
    assertion_failure,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const { return code_; }

    /// true for failed mathematical invariants, false for bad inputs
    bool is_assertion() const { return code_ == errc::assertion_failure || code_ == errc::budget_violated; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::empty_measure: return "EmptyMeasure";
    case errc::validation: return "Validation";
    case errc::parse: return "Parse";
    case errc::degree_exceeds_support: return "DegreeExceedsSupport";
    case errc::degenerate_constraint: return "DegenerateConstraint";
    case errc::no_vanishing_sequence: return "NoVanishingSequence";
    case errc::tail_model_missing: return "TailModelMissing";
    case errc::multiple_zero: return "MultipleZero";
    case errc::pole_at_z: return "PoleAtZ";
    case errc::shared_zero: return "SharedZero";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::insufficient_zeros: return "InsufficientZeros";
    case errc::zero_at_origin: return "ZeroAtOrigin";
    case errc::budget_violated: return "BudgetViolated";
    case errc::weight_vanishes: return "WeightVanishes";
    case errc::zero_outside_support: return "ZeroOutsideSupport";
    case errc::support_mismatch: return "SupportMismatch";
    case errc::assertion_failure: return "AssertionFailure";
    }
    return "Unknown";
}

} // namespace polyden
