#pragma once
#include <stdexcept>
#include <string>

namespace jrh {

/// Exit-code category carried by every library error.
enum class ErrorKind { Validation = 2, Numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)), detail_(what) {}
    ErrorKind kind() const noexcept { return kind_; }
    const std::string& code() const noexcept { return code_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }
    /// Message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string code_;
    std::string detail_;
};

#define JRH_DEFINE_ERROR(Name, Kind)                                              \
    class Name : public Error {                                                   \
    public:                                                                       \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, #Name, what) {} \
    };

// validation
JRH_DEFINE_ERROR(ParameterOutOfRange, Validation)
JRH_DEFINE_ERROR(InvalidInput, Validation)
JRH_DEFINE_ERROR(AtBranchPoint, Validation)
JRH_DEFINE_ERROR(AtPole, Validation)
JRH_DEFINE_ERROR(NotOnCut, Validation)
JRH_DEFINE_ERROR(NotOnArc, Validation)
JRH_DEFINE_ERROR(OnCut, Validation)
JRH_DEFINE_ERROR(OutsideConformalRadius, Validation)
JRH_DEFINE_ERROR(NearBranchPoint, Validation)
JRH_DEFINE_ERROR(ConditionViolated, Validation)
JRH_DEFINE_ERROR(OnBoundary, Validation)
JRH_DEFINE_ERROR(ExactInteger, Validation)
JRH_DEFINE_ERROR(LockHeld, Validation)

// numerical
JRH_DEFINE_ERROR(CutAmbiguity, Numerical)
JRH_DEFINE_ERROR(TraceDiverged, Numerical)
JRH_DEFINE_ERROR(DegenerateLevel, Numerical)
JRH_DEFINE_ERROR(QuadNoConverge, Numerical)
JRH_DEFINE_ERROR(RouteFailed, Numerical)
JRH_DEFINE_ERROR(LimitUnstable, Numerical)
JRH_DEFINE_ERROR(NoConverge, Numerical)
JRH_DEFINE_ERROR(OverflowRisk, Numerical)
JRH_DEFINE_ERROR(IntegerResonance, Numerical)
JRH_DEFINE_ERROR(InconsistentExponents, Numerical)
JRH_DEFINE_ERROR(PrecisionExhausted, Numerical)
JRH_DEFINE_ERROR(InvariantViolation, Numerical)
JRH_DEFINE_ERROR(IdentityViolated, Numerical)
JRH_DEFINE_ERROR(PathIntersectsCut, Numerical)
JRH_DEFINE_ERROR(PrecisionUnreachable, Numerical)

#undef JRH_DEFINE_ERROR

/// Raised when alpha + beta = -n - k - 1 collapses the degree to k.
class DegreeReduction : public Error {
public:
    DegreeReduction(int n, int k)
        : Error(ErrorKind::Validation, "DegreeReduction",
                "degree " + std::to_string(n) + " polynomial reduces to degree " + std::to_string(k)),
          n_(n), k_(k) {}
    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }

private:
    int n_, k_;
};

}  // namespace jrh
