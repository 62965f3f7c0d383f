#pragma once

#include <stdexcept>
#include <string>

namespace higherar {

/// Base class for every error raised by the library. `code()` is a stable
/// machine-readable name used by the CLI report.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define HIGHERAR_DEFINE_ERROR(Name)                                      \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(#Name, what) {}   \
    };

HIGHERAR_DEFINE_ERROR(NoSolution)
HIGHERAR_DEFINE_ERROR(FieldMismatch)
HIGHERAR_DEFINE_ERROR(DimensionMismatch)
HIGHERAR_DEFINE_ERROR(CyclicQuiver)
HIGHERAR_DEFINE_ERROR(InconsistentRelation)
HIGHERAR_DEFINE_ERROR(AlgebraMismatch)
HIGHERAR_DEFINE_ERROR(CharTooSmall)
HIGHERAR_DEFINE_ERROR(DecompositionInconclusive)
HIGHERAR_DEFINE_ERROR(NotProjective)
HIGHERAR_DEFINE_ERROR(ResolutionTooLong)
HIGHERAR_DEFINE_ERROR(SequenceLeavesCategory)
HIGHERAR_DEFINE_ERROR(NotAlmostSplit)
HIGHERAR_DEFINE_ERROR(LiftFailed)
HIGHERAR_DEFINE_ERROR(SliceMixing)
HIGHERAR_DEFINE_ERROR(TauNonVanishing)
HIGHERAR_DEFINE_ERROR(NotAnARSequence)
HIGHERAR_DEFINE_ERROR(CapExceeded)
HIGHERAR_DEFINE_ERROR(ParseError)

#undef HIGHERAR_DEFINE_ERROR

}  // namespace higherar
