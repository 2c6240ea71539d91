#include "stigmergia/csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "stigmergia/errors.hpp"

namespace stigmergia::csv {

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(std::move(cur));
    return out;
}

namespace {

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

double parse_real(const std::string& s, std::size_t line_no) {
    double v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw ParseError(where(line_no) + "bad real '" + s + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& s, std::size_t line_no) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty())
        throw ParseError(where(line_no) + "bad integer '" + s + "'");
    return v;
}

// Labels are written verbatim, so they must not need quoting.
const std::string& checked_label(const std::string& label) {
    if (label.find_first_of(",\"\r\n") != std::string::npos)
        throw std::invalid_argument("label '" + label + "' contains a comma, quote or line break");
    return label;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\r' || c == '\t'; });
}

}  // namespace

FeatureTable read_features(std::istream& in) {
    FeatureTable t;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) return t;  // empty file: no header, no rows
    ++line_no;
    auto header = split_line(line);
    if (header.empty() || header.front() != "id") throw ParseError(where(line_no) + "header must start with 'id'");
    const bool has_label = header.back() == "label";
    const std::size_t dims = header.size() - 1 - (has_label ? 1 : 0);
    t.feature_names.assign(header.begin() + 1, header.begin() + 1 + static_cast<std::ptrdiff_t>(dims));

    std::unordered_set<std::uint64_t> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size())
            throw ParseError(where(line_no) + "expected " + std::to_string(header.size()) + " fields");
        FeatureVector f;
        f.values.reserve(dims);
        for (std::size_t i = 0; i < dims; ++i) f.values.push_back(parse_real(cells[1 + i], line_no));
        const std::uint64_t id = parse_uint(cells[0], line_no);
        if (!seen.insert(id).second) throw ParseError(where(line_no) + "duplicate id " + cells[0]);
        t.add(id, std::move(f), has_label ? cells.back() : std::string{});
    }
    return t;
}

FeatureTable read_features(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_features(in);
}

void write_features(std::ostream& out, const FeatureTable& t) {
    out << "id";
    for (const auto& n : t.feature_names) out << ',' << n;
    out << ",label\n";
    for (std::size_t r = 0; r < t.size(); ++r) {
        out << t.ids[r];
        for (double v : t.rows[r].values) out << ',' << format_real(v);
        out << ',' << checked_label(t.labels[r]) << '\n';
    }
}

knn::Placement read_placement(std::istream& in, std::size_t grid_rows, std::size_t grid_cols) {
    knn::Placement p;
    p.grid_rows = grid_rows;
    p.grid_cols = grid_cols;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) return p;
    ++line_no;
    const auto header = split_line(line);
    if (header.size() != 4 || header[0] != "id" || header[1] != "row" || header[2] != "col" || header[3] != "label")
        throw ParseError(where(line_no) + "placement header must be id,row,col,label");
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto cells = split_line(line);
        if (cells.size() != 4) throw ParseError(where(line_no) + "expected 4 fields");
        knn::PlacementEntry e;
        e.id = parse_uint(cells[0], line_no);
        e.row = parse_uint(cells[1], line_no);
        e.col = parse_uint(cells[2], line_no);
        if (e.row >= grid_rows || e.col >= grid_cols)
            throw ParseError(where(line_no) + "cell " + cells[1] + "," + cells[2] + " is outside the " +
                             std::to_string(grid_rows) + "x" + std::to_string(grid_cols) + " grid");
        if (!cells[3].empty()) e.label = cells[3];
        p.entries.push_back(std::move(e));
    }
    return p;
}

void write_placement(std::ostream& out, const knn::Placement& p) {
    out << "id,row,col,label\n";
    for (const auto& e : p.entries)
        out << e.id << ',' << e.row << ',' << e.col << ',' << checked_label(e.label.value_or("")) << '\n';
}

void write_predictions(std::ostream& out, std::span<const PredictionRow> rows) {
    out << "id,predicted,truth,correct\n";
    for (const auto& r : rows)
        out << r.id << ',' << r.predicted << ',' << r.truth << ',' << (r.predicted == r.truth ? 1 : 0) << '\n';
}

void write_scatter(std::ostream& out, const FeatureTable& t, const std::string& x, const std::string& y) {
    auto column = [&](const std::string& name) {
        const auto it = std::find(t.feature_names.begin(), t.feature_names.end(), name);
        if (it == t.feature_names.end()) throw UnknownColumn("no feature column '" + name + "'");
        return static_cast<std::size_t>(it - t.feature_names.begin());
    };
    if (t.feature_names.empty() && t.size() == 0) {
        out << "id,x,y,label\n";
        return;
    }
    const std::size_t cx = column(x), cy = column(y);
    out << "id,x,y,label\n";
    for (std::size_t r = 0; r < t.size(); ++r)
        out << t.ids[r] << ',' << format_real(t.rows[r][cx]) << ',' << format_real(t.rows[r][cy]) << ','
            << t.labels[r] << '\n';
}

}  // namespace stigmergia::csv
