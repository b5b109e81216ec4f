#include "gep/mps.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace gep {

namespace {

constexpr const char* kObjectiveRow = "OBJ";

bool valid_name(const std::string& name, MpsFormat format) {
    if (name.empty()) return false;
    if (format == MpsFormat::fixed && name.size() > 8) return false;
    for (unsigned char c : name) {
        if (std::isspace(c) || c == '$' || c == '*') return false;
    }
    return true;
}

std::vector<std::string> output_names(const std::vector<std::string>& names, MpsFormat format, char prefix,
                                      bool avoid_objective) {
    std::set<std::string> seen;
    bool ok = true;
    for (const auto& n : names) {
        if (!valid_name(n, format) || !seen.insert(n).second || (avoid_objective && n == kObjectiveRow)) {
            ok = false;
            break;
        }
    }
    if (ok) return names;
    std::vector<std::string> out(names.size());
    char buf[32];
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%c%07zu", prefix, i);
        out[i] = buf;
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class Writer {
public:
    Writer(std::ostream& out, MpsFormat format) : out_(out), format_(format) {}

    void section(const std::string& s) { out_ << s << '\n'; }

    void row_type(char type, const std::string& name) {
        if (format_ == MpsFormat::fixed) {
            out_ << ' ' << type << "  " << name << '\n';
        } else {
            out_ << ' ' << type << ' ' << name << '\n';
        }
    }

    void field(const std::string& f1, const std::string& f2, const std::string& f3, double value) {
        if (format_ == MpsFormat::fixed) {
            char buf[64];
            std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  ", f1.c_str(), f2.c_str(), f3.c_str());
            out_ << buf << fmt(value) << '\n';
        } else {
            out_ << ' ' << (f1.empty() ? "" : f1 + " ") << f2 << ' ' << f3 << ' ' << fmt(value) << '\n';
        }
    }

private:
    std::ostream& out_;
    MpsFormat format_;
};

}  // namespace

void write_mps(const LPProblem& p, std::ostream& out, MpsFormat format) {
    const auto rows = output_names(p.row_names, format, 'R', true);
    const auto cols = output_names(p.col_names, format, 'C', false);
    Writer w(out, format);

    w.section("NAME          GEP");
    w.section("ROWS");
    w.row_type('N', kObjectiveRow);
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const double lo = p.row_lower[i];
        const double hi = p.row_upper[i];
        char type = 'N';
        if (lo == hi) {
            type = 'E';
        } else if (std::isfinite(lo)) {
            type = 'G';
        } else if (std::isfinite(hi)) {
            type = 'L';
        }
        w.row_type(type, rows[i]);
    }

    std::vector<std::vector<std::pair<std::size_t, double>>> by_col(p.num_cols());
    for (const auto& e : p.entries) by_col[e.col].emplace_back(e.row, e.value);
    w.section("COLUMNS");
    for (std::size_t j = 0; j < p.num_cols(); ++j) {
        if (p.cost[j] != 0.0 || by_col[j].empty()) w.field("", cols[j], kObjectiveRow, p.cost[j]);
        for (const auto& [row, value] : by_col[j]) w.field("", cols[j], rows[row], value);
    }

    w.section("RHS");
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const double lo = p.row_lower[i];
        const double hi = p.row_upper[i];
        const double rhs = std::isfinite(lo) ? lo : hi;
        if (std::isfinite(rhs) && rhs != 0.0) w.field("", "RHS", rows[i], rhs);
    }

    bool any_range = false;
    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const double lo = p.row_lower[i];
        const double hi = p.row_upper[i];
        if (lo != hi && std::isfinite(lo) && std::isfinite(hi)) {
            if (!any_range) w.section("RANGES");
            any_range = true;
            w.field("", "RNG", rows[i], hi - lo);
        }
    }

    w.section("BOUNDS");
    for (std::size_t j = 0; j < p.num_cols(); ++j) {
        const double lo = p.col_lower[j];
        const double hi = p.col_upper[j];
        if (lo == hi) {
            w.field("FX", "BND", cols[j], lo);
            continue;
        }
        if (!std::isfinite(lo) && !std::isfinite(hi)) {
            out << (format == MpsFormat::fixed ? " FR BND       " : " FR BND ") << cols[j] << '\n';
            continue;
        }
        if (!std::isfinite(lo)) {
            out << (format == MpsFormat::fixed ? " MI BND       " : " MI BND ") << cols[j] << '\n';
        } else if (lo != 0.0) {
            w.field("LO", "BND", cols[j], lo);
        }
        if (std::isfinite(hi)) w.field("UP", "BND", cols[j], hi);
    }
    w.section("ENDATA");
}

void export_mps(const LPProblem& problem, const std::filesystem::path& path, MpsFormat format) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_mps(problem, out, format);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

namespace {

double parse_number(const std::string& s, std::size_t line) {
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    auto res = std::from_chars(first, s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw MpsError(line, "bad number '" + s + "'");
    return v;
}

enum class Section { none, name, objsense, rows, columns, rhs, ranges, bounds, done };

}  // namespace

LPProblem read_mps(std::istream& in) {
    LPProblem p;
    std::unordered_map<std::string, std::size_t> row_index;
    std::unordered_map<std::string, std::size_t> col_index;
    std::vector<char> row_type;
    std::vector<double> rhs;
    std::vector<double> range;
    std::vector<bool> has_range;
    std::vector<bool> lower_set;
    std::string objective;
    Section section = Section::none;
    std::string text;
    std::size_t line = 0;

    auto find_row = [&](const std::string& name) -> std::ptrdiff_t {
        if (name == objective) return -1;
        auto it = row_index.find(name);
        if (it == row_index.end()) throw MpsError(line, "unknown row '" + name + "'");
        return static_cast<std::ptrdiff_t>(it->second);
    };
    auto find_col = [&](const std::string& name) -> std::size_t {
        auto it = col_index.find(name);
        if (it == col_index.end()) throw MpsError(line, "unknown column '" + name + "'");
        return it->second;
    };

    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.empty() || text[0] == '*') continue;
        std::istringstream ss(text);
        std::vector<std::string> f;
        for (std::string tok; ss >> tok;) f.push_back(tok);
        if (f.empty()) continue;

        if (!std::isspace(static_cast<unsigned char>(text[0]))) {
            const std::string& head = f[0];
            if (head == "NAME") section = Section::name;
            else if (head == "OBJSENSE") {
                section = Section::objsense;
                if (f.size() > 1 && f[1] != "MIN" && f[1] != "MINIMIZE") throw MpsError(line, "only minimization is supported");
            }
            else if (head == "ROWS") section = Section::rows;
            else if (head == "COLUMNS") section = Section::columns;
            else if (head == "RHS") section = Section::rhs;
            else if (head == "RANGES") section = Section::ranges;
            else if (head == "BOUNDS") section = Section::bounds;
            else if (head == "ENDATA") {
                section = Section::done;
                break;
            } else {
                throw MpsError(line, "unknown section '" + head + "'");
            }
            continue;
        }

        switch (section) {
            case Section::objsense:
                if (f[0] != "MIN" && f[0] != "MINIMIZE") throw MpsError(line, "only minimization is supported");
                break;
            case Section::rows: {
                if (f.size() != 2 || f[0].size() != 1) throw MpsError(line, "expected '<type> <name>' in ROWS");
                const char type = f[0][0];
                if (type == 'N' && objective.empty()) {
                    objective = f[1];
                    break;
                }
                if (type != 'N' && type != 'E' && type != 'L' && type != 'G') {
                    throw MpsError(line, std::string("unknown row type '") + type + "'");
                }
                if (row_index.count(f[1]) || f[1] == objective) throw MpsError(line, "duplicate row '" + f[1] + "'");
                row_index[f[1]] = p.add_row(f[1], -kInf, kInf);
                row_type.push_back(type);
                rhs.push_back(0.0);
                range.push_back(0.0);
                has_range.push_back(false);
                break;
            }
            case Section::columns: {
                if (f.size() >= 3 && f[1] == "'MARKER'") throw MpsError(line, "integer markers are not supported");
                if (f.size() != 3 && f.size() != 5) throw MpsError(line, "expected 3 or 5 fields in COLUMNS");
                auto it = col_index.find(f[0]);
                std::size_t col = 0;
                if (it == col_index.end()) {
                    col = p.add_column(f[0], 0.0, 0.0, kInf);
                    col_index[f[0]] = col;
                    lower_set.push_back(false);
                } else {
                    col = it->second;
                }
                for (std::size_t k = 1; k + 1 < f.size(); k += 2) {
                    const double v = parse_number(f[k + 1], line);
                    const auto r = find_row(f[k]);
                    if (r < 0) {
                        p.cost[col] += v;
                    } else {
                        p.add_entry(static_cast<std::size_t>(r), col, v);
                    }
                }
                break;
            }
            case Section::rhs:
            case Section::ranges: {
                // The set name is optional in free format.
                const std::size_t start = (f.size() % 2 == 1) ? 1 : 0;
                if (f.size() < 2 || f.size() > 5) throw MpsError(line, "bad field count");
                for (std::size_t k = start; k + 1 < f.size(); k += 2) {
                    const double v = parse_number(f[k + 1], line);
                    const auto r = find_row(f[k]);
                    if (r < 0) {
                        if (section == Section::rhs && v != 0.0) throw MpsError(line, "objective constants are not supported");
                        continue;
                    }
                    if (section == Section::rhs) {
                        rhs[r] = v;
                    } else {
                        range[r] = v;
                        has_range[r] = true;
                    }
                }
                break;
            }
            case Section::bounds: {
                const std::string& type = f[0];
                const bool no_value = type == "FR" || type == "MI" || type == "PL" || type == "BV";
                std::string col_name;
                double v = 0.0;
                if (no_value) {
                    if (f.size() < 2 || f.size() > 4) throw MpsError(line, "bad field count in BOUNDS");
                    col_name = f.size() >= 3 ? f[2] : f[1];
                } else {
                    if (f.size() != 4 && f.size() != 3) throw MpsError(line, "bad field count in BOUNDS");
                    col_name = f[f.size() - 2];
                    v = parse_number(f.back(), line);
                }
                const std::size_t c = find_col(col_name);
                if (type == "UP" || type == "UI") {
                    p.col_upper[c] = v;
                    if (v < 0.0 && p.col_lower[c] == 0.0 && !lower_set[c]) p.col_lower[c] = -kInf;
                } else if (type == "LO" || type == "LI") {
                    p.col_lower[c] = v;
                    lower_set[c] = true;
                } else if (type == "FX") {
                    p.col_lower[c] = p.col_upper[c] = v;
                    lower_set[c] = true;
                } else if (type == "FR") {
                    p.col_lower[c] = -kInf;
                    p.col_upper[c] = kInf;
                    lower_set[c] = true;
                } else if (type == "MI") {
                    p.col_lower[c] = -kInf;
                    lower_set[c] = true;
                } else if (type == "PL") {
                    p.col_upper[c] = kInf;
                } else if (type == "BV") {
                    p.col_lower[c] = 0.0;
                    p.col_upper[c] = 1.0;
                    lower_set[c] = true;
                } else {
                    throw MpsError(line, "unsupported bound type '" + type + "'");
                }
                break;
            }
            case Section::name:
            case Section::none:
            case Section::done:
                throw MpsError(line, "data outside of a section");
        }
    }
    if (section != Section::done) throw MpsError(line, "missing ENDATA");
    if (objective.empty()) throw MpsError(line, "no objective row");

    for (std::size_t i = 0; i < p.num_rows(); ++i) {
        const double b = rhs[i];
        const double r = range[i];
        switch (row_type[i]) {
            case 'E':
                if (has_range[i] && r > 0) {
                    p.row_lower[i] = b;
                    p.row_upper[i] = b + r;
                } else if (has_range[i] && r < 0) {
                    p.row_lower[i] = b + r;
                    p.row_upper[i] = b;
                } else {
                    p.row_lower[i] = p.row_upper[i] = b;
                }
                break;
            case 'L':
                p.row_upper[i] = b;
                if (has_range[i]) p.row_lower[i] = b - std::abs(r);
                break;
            case 'G':
                p.row_lower[i] = b;
                if (has_range[i]) p.row_upper[i] = b + std::abs(r);
                break;
            default:
                break;
        }
    }
    return p;
}

LPProblem import_mps(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_mps(in);
}

}  // namespace gep
