// MPS reader and writer for LPProblem.
//
// Fixed format writes names in their classic columns; numbers are written at
// full precision and may run past the 12-character field, which the reader
// (and most solvers) accept because fields are whitespace separated. Names
// that do not fit the chosen format are replaced by generated R/C names.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gep/lp_problem.hpp"

namespace gep {

enum class MpsFormat { fixed, free };

class MpsError : public std::runtime_error {
public:
    MpsError(std::size_t line, const std::string& message)
        : std::runtime_error("MPS line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

void write_mps(const LPProblem& problem, std::ostream& out, MpsFormat format = MpsFormat::fixed);
void export_mps(const LPProblem& problem, const std::filesystem::path& path, MpsFormat format = MpsFormat::fixed);

/// Parses fixed or free MPS. Only minimization is supported.
LPProblem read_mps(std::istream& in);
LPProblem import_mps(const std::filesystem::path& path);

}  // namespace gep
