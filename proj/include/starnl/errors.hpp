#pragma once

#include <stdexcept>
#include <string>

namespace starnl {

struct NotHermitianError : std::runtime_error {
    explicit NotHermitianError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidWeightsError : std::runtime_error {
    explicit InvalidWeightsError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRangeError : std::runtime_error {
    explicit OutOfRangeError(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroSuccessError : std::runtime_error {
    explicit ZeroSuccessError(const std::string& what) : std::runtime_error(what) {}
};

struct NormExceededError : std::runtime_error {
    explicit NormExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct NonSeparableAssignmentError : std::runtime_error {
    explicit NonSeparableAssignmentError(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedNError : std::runtime_error {
    explicit UnsupportedNError(const std::string& what) : std::runtime_error(what) {}
};

struct ComplexSpectrumError : std::runtime_error {
    explicit ComplexSpectrumError(const std::string& what) : std::runtime_error(what) {}
};

// Config/CLI parse failure; carries the offending location.
struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ", col " +
                             std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

}  // namespace starnl
