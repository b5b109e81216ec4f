// Minimal CSV table: one header row, comma separated, no quoting.

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gep {

/// Input failure pinned to a file and (when known) a 1-based line number.
class InputError : public std::runtime_error {
public:
    InputError(const std::string& file, std::size_t line, const std::string& message)
        : std::runtime_error(file + (line ? ":" + std::to_string(line) : std::string()) + ": " + message),
          file_(file),
          line_(line) {}

    const std::string& file() const { return file_; }
    std::size_t line() const { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class CsvTable {
public:
    static CsvTable read(const std::filesystem::path& path);
    static CsvTable parse(const std::string& text, const std::string& file_label);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t num_rows() const { return rows_.size(); }
    std::optional<std::size_t> column(const std::string& name) const;
    std::size_t require_column(const std::string& name) const;

    const std::string& cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }
    std::size_t line_of(std::size_t row) const { return lines_[row]; }
    const std::string& file() const { return file_; }

    double number(std::size_t row, std::size_t col) const;
    bool flag(std::size_t row, std::size_t col) const;
    std::vector<double> numeric_column(std::size_t col) const;

    [[noreturn]] void fail(std::size_t row, const std::string& message) const;

private:
    std::string file_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> lines_;
};

/// Shortest text that reads back to exactly `v` when v has at most
/// `digits` significant digits.
std::string format_number(double v, int digits = 9);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace gep
