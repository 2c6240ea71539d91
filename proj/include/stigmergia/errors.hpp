#pragma once

#include <stdexcept>
#include <string>

namespace stigmergia {

// Base for every domain error raised by the library. CLI maps these to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define STIGMERGIA_ERROR(Name)                                   \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(what) {}  \
    }

STIGMERGIA_ERROR(EmptyObject);
STIGMERGIA_ERROR(DegenerateHistogram);
STIGMERGIA_ERROR(InsufficientData);
STIGMERGIA_ERROR(DimensionMismatch);
STIGMERGIA_ERROR(CapacityExceeded);
STIGMERGIA_ERROR(NoItems);
STIGMERGIA_ERROR(EvenK);
STIGMERGIA_ERROR(NotEnoughMarkers);
STIGMERGIA_ERROR(IdMismatch);
STIGMERGIA_ERROR(UnknownColumn);
STIGMERGIA_ERROR(ParseError);
STIGMERGIA_ERROR(InvalidParams);

#undef STIGMERGIA_ERROR

}  // namespace stigmergia
