#pragma once

#include <stdexcept>
#include <string>

namespace zlab {

// One exception type per failure mode named in the module contracts.
// All derive from Error so callers can catch the whole family.

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ZLAB_DEFINE_ERROR(Name)                                          \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

ZLAB_DEFINE_ERROR(QuadratureFailure);
ZLAB_DEFINE_ERROR(NonPositiveValue);
ZLAB_DEFINE_ERROR(ParameterOutOfRange);
ZLAB_DEFINE_ERROR(InvalidPolygon);
ZLAB_DEFINE_ERROR(NotLipschitz);
ZLAB_DEFINE_ERROR(DepthExhausted);
ZLAB_DEFINE_ERROR(NoReflectiveCube);
ZLAB_DEFINE_ERROR(DegenerateCube);
ZLAB_DEFINE_ERROR(NotNested);
ZLAB_DEFINE_ERROR(EmptyFamily);
ZLAB_DEFINE_ERROR(ThresholdTooSmall);
ZLAB_DEFINE_ERROR(CoverageGap);
ZLAB_DEFINE_ERROR(PointTooCloseToBoundary);
ZLAB_DEFINE_ERROR(UnknownKernel);
ZLAB_DEFINE_ERROR(UnknownDomain);
ZLAB_DEFINE_ERROR(GammaOutOfRange);
ZLAB_DEFINE_ERROR(RatioViolated);
ZLAB_DEFINE_ERROR(ConfigError);
ZLAB_DEFINE_ERROR(MissingArtifact);

#undef ZLAB_DEFINE_ERROR

} // namespace zlab
