#pragma once

#include <string>

#include "mgs/graph.hpp"
#include "mgs/spectral.hpp"

namespace mgs {
namespace io {

/// Graph document: {"vertices": [id, ...],
///                  "edges": [{"id":, "u":, "v":, "length":}, ...]}
MetricGraphModel load_graph(const std::string& path);
MetricGraphModel parse_graph(const std::string& text);

/// Measure document: {"atoms": [{"edge":, "offset":, "mass":} |
///                              {"vertex":, "mass":}, ...],
///                    "normalize": bool (optional)}
DiscreteMeasure load_measure(const std::string& path, const MetricGraphModel& model);
DiscreteMeasure parse_measure(const std::string& text, const MetricGraphModel& model);

/// Point syntax used on the command line: "edgeId:offset" or "v:vertexId".
GraphPoint parse_point(const std::string& text, const MetricGraphModel& model);

/// Fixed-precision decimal used for human-readable output (12 significant
/// digits) and shortest-roundtrip formatting for CSV.
std::string format_human(double v);
std::string format_roundtrip(double v);

}  // namespace io
}  // namespace mgs
