#pragma once

#include <stdexcept>
#include <string>

namespace epidemigrid {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FileNotFound : Error {
    using Error::Error;
};
struct MalformedImage : Error {
    using Error::Error;
};
struct AllObstacle : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct IllegalWeight : Error {
    using Error::Error;
};
struct EmptyGraph : Error {
    using Error::Error;
};
struct Unreachable : Error {
    using Error::Error;
};
struct NoBoundaryRoad : Error {
    using Error::Error;
};
struct NoDestination : Error {
    using Error::Error;
};
struct ConfigInvalid : Error {
    using Error::Error;
};

} // namespace epidemigrid
