#pragma once

#include <stdexcept>
#include <string>

namespace tb {

// Base class for all numerical-domain failures. CLI maps these to exit 1.
class NumericsError : public std::runtime_error {
public:
    NumericsError(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define TB_DEFINE_ERROR(NAME)                                    \
    class NAME : public NumericsError {                          \
    public:                                                      \
        explicit NAME(const std::string& what)                   \
            : NumericsError(#NAME, what) {}                      \
    }

TB_DEFINE_ERROR(NotSymmetric);
TB_DEFINE_ERROR(NotPositiveDefinite);
TB_DEFINE_ERROR(NotHalfInteger);
TB_DEFINE_ERROR(NotOdd);
TB_DEFINE_ERROR(EpsilonTooSmall);
TB_DEFINE_ERROR(NotOnThetaDivisor);
TB_DEFINE_ERROR(DenominatorUnderflow);
TB_DEFINE_ERROR(OnDiagonal);
TB_DEFINE_ERROR(PoleOnPath);
TB_DEFINE_ERROR(NoConvergence);
TB_DEFINE_ERROR(SingularJacobian);
TB_DEFINE_ERROR(NotSupported);

#undef TB_DEFINE_ERROR

} // namespace tb
