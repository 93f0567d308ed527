#pragma once

#include "phishembed/boundary.hpp"
#include "phishembed/linalg.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace phishembed {

inline constexpr std::string_view kArtifactVersion = "1.0.0";

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

void write_text(const std::filesystem::path& path, std::string_view text);
void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& j);

/// doc_id,label,<prefix><i>... with label written as its wire name.
std::string features_csv(const std::vector<std::string>& doc_ids, const std::vector<int>& labels, const Matrix& x,
                         const std::string& column_prefix, std::size_t first_index);
/// Columns v0..v{d-1}.
std::string embeddings_csv(const std::vector<std::string>& doc_ids, const std::vector<int>& labels, const Matrix& x);
/// Columns c1, c2, ...
std::string projection_csv(const std::vector<std::string>& doc_ids, const std::vector<int>& labels, const Matrix& x);

/// n,R_n with n starting at 1.
std::string variance_curve_csv(const std::vector<double>& curve);
std::string variance_curve_svg(const std::vector<double>& curve, double threshold);

/// x,y,label per lattice point.
std::string boundary_lattice_csv(const BoundaryGrid& grid);
/// doc_id,label,x,y
std::string boundary_scatter_csv(const BoundaryGrid& grid);
/// Shaded lattice cells under the labelled scatter.
std::string boundary_svg(const BoundaryGrid& grid, const std::string& title);

struct RunManifest {
    std::string command;
    nlohmann::ordered_json flags = nlohmann::ordered_json::object();
    nlohmann::ordered_json seeds = nlohmann::ordered_json::object();
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    /// Adds the artifact version and a UTC timestamp.
    nlohmann::ordered_json to_json() const;
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

}  // namespace phishembed
