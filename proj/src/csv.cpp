#include "gep/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gep {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

CsvTable CsvTable::read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
}

CsvTable CsvTable::parse(const std::string& text, const std::string& file_label) {
    CsvTable t;
    t.file_ = file_label;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (!have_header) {
            t.header_ = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != t.header_.size()) {
            throw InputError(file_label, line_no,
                             "expected " + std::to_string(t.header_.size()) + " fields, found " + std::to_string(cells.size()));
        }
        t.rows_.push_back(std::move(cells));
        t.lines_.push_back(line_no);
    }
    if (!have_header) throw InputError(file_label, 0, "missing header row");
    return t;
}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t CsvTable::require_column(const std::string& name) const {
    if (auto c = column(name)) return *c;
    throw InputError(file_, 1, "missing column '" + name + "'");
}

void CsvTable::fail(std::size_t row, const std::string& message) const {
    throw InputError(file_, lines_[row], message);
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& s = rows_[row][col];
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    auto res = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        fail(row, "column '" + header_[col] + "': bad number '" + s + "'");
    }
    return v;
}

bool CsvTable::flag(std::size_t row, std::size_t col) const {
    const std::string& s = rows_[row][col];
    if (s == "1" || s == "true" || s == "TRUE" || s == "True") return true;
    if (s == "0" || s == "false" || s == "FALSE" || s == "False") return false;
    fail(row, "column '" + header_[col] + "': bad flag '" + s + "'");
}

std::vector<double> CsvTable::numeric_column(std::size_t col) const {
    std::vector<double> out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) out[r] = number(r, col);
    return out;
}

std::string format_number(double v, int digits) {
    if (v == 0.0) return "0";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

void CsvWriter::add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

std::string CsvWriter::str() const {
    std::ostringstream out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << cells[i];
        }
        out << '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out.str();
}

void CsvWriter::write(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << str();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace gep
