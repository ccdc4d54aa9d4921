#pragma once

#include <stdexcept>
#include <string>

namespace jres {

enum class Errc {
    Schema,
    DuplicateNode,
    DegreeZero,
    NotAPerfectSquare,
    NormalizationViolated,
    PoleAtDirichletPoint,
    SquareRootSingularity,
    OnSlit,
    ClassViolation,
    DegreeMismatch,
    LiftAmbiguous,
    LawViolation,
    AmbiguousAssignment,
    AtBandEdge,
    NonPositiveNorming,
    HypothesisViolation,
    QuadratureNotConverged,
    NotPositive,
    SupportLeak,
    NonRealCoefficients,
    BranchSelectionFailed,
    ClassMembershipFailed,
};

// Process exit status associated with an error family.
enum class Category { Schema = 2, Precondition = 3, Numerical = 4 };

const char* errc_name(Errc c);
Category errc_category(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }
    Category category() const noexcept { return errc_category(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace jres
