#include "phishembed/export.hpp"

#include "phishembed/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

namespace phishembed {

std::string format_double(double v) {
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

namespace {

std::string fixed(double v, int digits = 2) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string label_name(int y) { return y == 1 ? "phishing" : "legitimate"; }

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr const char* kPhishColor = "#c0392b";
constexpr const char* kLegitColor = "#2471a3";

}  // namespace

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << text;
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::string features_csv(const std::vector<std::string>& doc_ids, const std::vector<int>& labels, const Matrix& x,
                         const std::string& column_prefix, std::size_t first_index) {
    if (doc_ids.size() != x.rows() || labels.size() != x.rows())
        throw DimensionError("csv export: ids/labels do not match rows");
    std::ostringstream os;
    os << "doc_id,label";
    for (std::size_t c = 0; c < x.cols(); ++c) os << ',' << column_prefix << (c + first_index);
    os << '\n';
    for (std::size_t r = 0; r < x.rows(); ++r) {
        os << doc_ids[r] << ',' << label_name(labels[r]);
        for (std::size_t c = 0; c < x.cols(); ++c) os << ',' << format_double(x(r, c));
        os << '\n';
    }
    return os.str();
}

std::string embeddings_csv(const std::vector<std::string>& doc_ids, const std::vector<int>& labels, const Matrix& x) {
    return features_csv(doc_ids, labels, x, "v", 0);
}

std::string projection_csv(const std::vector<std::string>& doc_ids, const std::vector<int>& labels, const Matrix& x) {
    return features_csv(doc_ids, labels, x, "c", 1);
}

std::string variance_curve_csv(const std::vector<double>& curve) {
    std::ostringstream os;
    os << "n,R_n\n";
    for (std::size_t i = 0; i < curve.size(); ++i) os << (i + 1) << ',' << format_double(curve[i]) << '\n';
    return os.str();
}

std::string variance_curve_svg(const std::vector<double>& curve, double threshold) {
    const double w = 480, h = 320, left = 50, right = 20, top = 20, bottom = 40;
    const double pw = w - left - right, ph = h - top - bottom;
    const std::size_t n = curve.size();
    auto px = [&](std::size_t i) { return left + (n > 1 ? pw * static_cast<double>(i) / (n - 1) : pw / 2); };
    auto py = [&](double v) { return top + ph * (1.0 - v); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
       << "\" stroke=\"black\"/>\n";
    for (double tick : {0.0, 0.25, 0.5, 0.75, 1.0})
        os << "<text x=\"" << left - 6 << "\" y=\"" << fixed(py(tick) + 4) << "\" font-size=\"10\" text-anchor=\"end\">"
           << fixed(tick) << "</text>\n";
    for (std::size_t i = 0; i < n; ++i)
        os << "<text x=\"" << fixed(px(i)) << "\" y=\"" << top + ph + 14
           << "\" font-size=\"9\" text-anchor=\"middle\">" << (i + 1) << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << fixed(py(threshold)) << "\" x2=\"" << left + pw << "\" y2=\""
       << fixed(py(threshold)) << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    os << "<polyline fill=\"none\" stroke=\"" << kLegitColor << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) os << (i ? " " : "") << fixed(px(i)) << ',' << fixed(py(curve[i]));
    os << "\"/>\n";
    for (std::size_t i = 0; i < n; ++i)
        os << "<circle cx=\"" << fixed(px(i)) << "\" cy=\"" << fixed(py(curve[i])) << "\" r=\"2.5\" fill=\""
           << kLegitColor << "\"/>\n";
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << h - 6
       << "\" font-size=\"11\" text-anchor=\"middle\">principal components n</text>\n";
    os << "<text x=\"12\" y=\"" << top + ph / 2 << "\" font-size=\"11\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
       << top + ph / 2 << ")\">cumulative explained variance</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string boundary_lattice_csv(const BoundaryGrid& grid) {
    std::ostringstream os;
    os << "x,y,label\n";
    for (std::size_t r = 0; r < grid.predictions.size(); ++r)
        for (std::size_t c = 0; c < grid.predictions[r].size(); ++c)
            os << format_double(grid.x_range.at(c)) << ',' << format_double(grid.y_range.at(r)) << ','
               << grid.predictions[r][c] << '\n';
    return os.str();
}

std::string boundary_scatter_csv(const BoundaryGrid& grid) {
    std::ostringstream os;
    os << "doc_id,label,x,y\n";
    for (const auto& p : grid.scatter)
        os << p.doc_id << ',' << label_name(p.label) << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
    return os.str();
}

std::string boundary_svg(const BoundaryGrid& grid, const std::string& title) {
    const double size = 420, pad = 30;
    const auto& xr = grid.x_range;
    const auto& yr = grid.y_range;
    auto px = [&](double x) { return pad + size * (x - xr.min) / (xr.max - xr.min); };
    auto py = [&](double y) { return pad + size * (1.0 - (y - yr.min) / (yr.max - yr.min)); };
    const double cw = size / static_cast<double>(xr.resolution - 1);
    const double ch = size / static_cast<double>(yr.resolution - 1);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\"" << size + 2 * pad
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << pad << "\" y=\"18\" font-size=\"12\">" << escape_xml(title) << "</text>\n";
    // Each lattice point owns the cell centred on it, clipped to the plot area.
    os << "<g shape-rendering=\"crispEdges\" fill-opacity=\"0.25\">\n";
    for (std::size_t r = 0; r < grid.predictions.size(); ++r)
        for (std::size_t c = 0; c < grid.predictions[r].size(); ++c) {
            const double x0 = std::max(pad, px(xr.at(c)) - cw / 2);
            const double x1 = std::min(pad + size, px(xr.at(c)) + cw / 2);
            const double y0 = std::max(pad, py(yr.at(r)) - ch / 2);
            const double y1 = std::min(pad + size, py(yr.at(r)) + ch / 2);
            os << "<rect x=\"" << fixed(x0) << "\" y=\"" << fixed(y0) << "\" width=\"" << fixed(x1 - x0)
               << "\" height=\"" << fixed(y1 - y0) << "\" fill=\""
               << (grid.predictions[r][c] == 1 ? kPhishColor : kLegitColor) << "\"/>\n";
        }
    os << "</g>\n";
    os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << size << "\" height=\"" << size
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& p : grid.scatter) {
        const char* color = p.label == 1 ? kPhishColor : kLegitColor;
        if (p.label == 1)
            os << "<rect x=\"" << fixed(px(p.x) - 4) << "\" y=\"" << fixed(py(p.y) - 4)
               << "\" width=\"8\" height=\"8\" fill=\"" << color << "\" stroke=\"black\"><title>" << escape_xml(p.doc_id)
               << "</title></rect>\n";
        else
            os << "<circle cx=\"" << fixed(px(p.x)) << "\" cy=\"" << fixed(py(p.y)) << "\" r=\"4.5\" fill=\"" << color
               << "\" stroke=\"black\"><title>" << escape_xml(p.doc_id) << "</title></circle>\n";
    }
    os << "</svg>\n";
    return os.str();
}

nlohmann::ordered_json RunManifest::to_json() const {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

    nlohmann::ordered_json j;
    j["command"] = command;
    j["artifact_version"] = kArtifactVersion;
    j["flags"] = flags;
    j["seeds"] = seeds;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["timestamp"] = stamp;
    return j;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    write_json_file(path, manifest.to_json());
}

}  // namespace phishembed
