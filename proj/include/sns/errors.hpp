#ifndef SNS_ERRORS_HPP
#define SNS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sns {

// I/O failure: unreadable source, unwritable destination.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Data fails validation (bad schema, suspicious input, integrity breach).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A sampling pool cannot supply the requested group size.
class CapacityError : public DataError {
public:
    using DataError::DataError;
};

// Lookup of an unknown entity (e.g. user id not in the graph).
class LookupError : public DataError {
public:
    using DataError::DataError;
};

}  // namespace sns

#endif
