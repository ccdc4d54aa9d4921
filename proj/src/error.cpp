#include "jres/error.hpp"

namespace jres {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::Schema: return "SchemaError";
        case Errc::DuplicateNode: return "DuplicateNode";
        case Errc::DegreeZero: return "DegreeZero";
        case Errc::NotAPerfectSquare: return "NotAPerfectSquare";
        case Errc::NormalizationViolated: return "NormalizationViolated";
        case Errc::PoleAtDirichletPoint: return "PoleAtDirichletPoint";
        case Errc::SquareRootSingularity: return "SquareRootSingularity";
        case Errc::OnSlit: return "OnSlit";
        case Errc::ClassViolation: return "ClassViolation";
        case Errc::DegreeMismatch: return "DegreeMismatch";
        case Errc::LiftAmbiguous: return "LiftAmbiguous";
        case Errc::LawViolation: return "LawViolation";
        case Errc::AmbiguousAssignment: return "AmbiguousAssignment";
        case Errc::AtBandEdge: return "AtBandEdge";
        case Errc::NonPositiveNorming: return "NonPositiveNorming";
        case Errc::HypothesisViolation: return "HypothesisViolation";
        case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
        case Errc::NotPositive: return "NotPositive";
        case Errc::SupportLeak: return "SupportLeak";
        case Errc::NonRealCoefficients: return "NonRealCoefficients";
        case Errc::BranchSelectionFailed: return "BranchSelectionFailed";
        case Errc::ClassMembershipFailed: return "ClassMembershipFailed";
    }
    return "Error";
}

Category errc_category(Errc c) {
    switch (c) {
        case Errc::Schema:
            return Category::Schema;
        case Errc::DuplicateNode:
        case Errc::DegreeZero:
        case Errc::NotAPerfectSquare:
        case Errc::NormalizationViolated:
        case Errc::PoleAtDirichletPoint:
        case Errc::SquareRootSingularity:
        case Errc::OnSlit:
        case Errc::ClassViolation:
        case Errc::AtBandEdge:
        case Errc::HypothesisViolation:
        case Errc::NotPositive:
        case Errc::NonRealCoefficients:
        case Errc::ClassMembershipFailed:
            return Category::Precondition;
        default:
            return Category::Numerical;
    }
}

}  // namespace jres
