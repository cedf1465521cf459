#pragma once

#include <stdexcept>
#include <string>

namespace meridian {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define MERIDIAN_ERROR(Name)                                   \
    struct Name : Error {                                      \
        explicit Name(const std::string& msg = #Name)          \
            : Error(std::string(#Name) + ": " + msg) {}        \
    }

// sphere
MERIDIAN_ERROR(DegenerateTriple);

// domain
MERIDIAN_ERROR(OverlappingComponents);
MERIDIAN_ERROR(BasepointInComplement);
MERIDIAN_ERROR(EmptyComponent);
MERIDIAN_ERROR(NotMultiplyConnected);
MERIDIAN_ERROR(CurveTouchesComplement);
MERIDIAN_ERROR(PointNotInDomain);

// metric
MERIDIAN_ERROR(NonConvergence);
MERIDIAN_ERROR(GridTooCoarse);
MERIDIAN_ERROR(CurveTooCloseToBoundary);

// geodesic
MERIDIAN_ERROR(SelfIntersectionDetected);
MERIDIAN_ERROR(ClearanceLost);
MERIDIAN_ERROR(NoSeparatingCurveFound);
MERIDIAN_ERROR(PrincipalMeridianAbsent);

// canonical
MERIDIAN_ERROR(IllConditioned);
MERIDIAN_ERROR(DegenerateComponent);
MERIDIAN_ERROR(NewtonDiverged);
MERIDIAN_ERROR(WOutsideRange);

// caratheodory
MERIDIAN_ERROR(NoHausdorffLimit);
MERIDIAN_ERROR(LabelingInconsistent);

// harness
MERIDIAN_ERROR(UnknownScenario);
MERIDIAN_ERROR(IoFailure);

#undef MERIDIAN_ERROR

} // namespace meridian
