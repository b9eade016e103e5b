#pragma once

#include <stdexcept>
#include <string>

namespace frheo {

/// Base class for every error raised by the library. Each subclass carries a
/// stable short code (E_DOMAIN, E_FORMAT, ...) that the command-line tool
/// prints verbatim.
class Error : public std::runtime_error {
public:
    Error(const char* code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    const char* code() const noexcept { return code_; }

private:
    const char* code_;
};

#define FRHEO_DEFINE_ERROR(Name, Code)                                   \
    class Name : public Error {                                          \
    public:                                                              \
        explicit Name(const std::string& what) : Error(Code, what) {}    \
    }

FRHEO_DEFINE_ERROR(InvalidParameter, "E_PARAM");
FRHEO_DEFINE_ERROR(DomainError, "E_DOMAIN");
FRHEO_DEFINE_ERROR(PoleError, "E_POLE");
FRHEO_DEFINE_ERROR(OverflowError, "E_OVERFLOW");
FRHEO_DEFINE_ERROR(GridError, "E_GRID");
FRHEO_DEFINE_ERROR(BranchError, "E_BRANCH");
FRHEO_DEFINE_ERROR(StabilityError, "E_STABILITY");
FRHEO_DEFINE_ERROR(QuadratureError, "E_QUADRATURE");
FRHEO_DEFINE_ERROR(ConvergenceError, "E_CONVERGENCE");
FRHEO_DEFINE_ERROR(DegenerateDataError, "E_DEGENERATE");
FRHEO_DEFINE_ERROR(DivisionError, "E_DIVISION");
FRHEO_DEFINE_ERROR(FormatError, "E_FORMAT");
FRHEO_DEFINE_ERROR(IoError, "E_IO");

#undef FRHEO_DEFINE_ERROR

}  // namespace frheo
