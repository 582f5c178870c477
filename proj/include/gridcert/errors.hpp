#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridcert {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A pivot underflowed during LU elimination.
struct SingularMatrixError : Error {
    std::size_t pivot_index;
    explicit SingularMatrixError(std::size_t index)
        : Error("singular matrix: pivot " + std::to_string(index) + " underflowed"),
          pivot_index(index) {}
};

/// An iterative kernel hit its iteration cap without converging.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Bad input shape or an argument outside its documented range.
struct InvalidArgumentError : Error {
    using Error::Error;
};

}  // namespace gridcert
