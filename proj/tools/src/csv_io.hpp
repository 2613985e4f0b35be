#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sdc/point_set.hpp"

namespace sdc::cli {

/// Parses comma-separated points. A first row that is not fully numeric is a
/// header; a trailing header column named `label` is read as integer labels.
/// Blank lines are skipped. `source` names the input in error messages.
PointSet parse_csv(std::istream& in, const std::string& source);
PointSet read_csv(const std::string& path);

/// Coordinates (and labels, if any) with an x0,x1,...[,label] header.
void write_points_csv(std::ostream& out, const PointSet& ps);

/// Coordinates followed by one label per point, for plotting results.
void write_points_csv(std::ostream& out, const PointSet& ps, std::span<const int> labels);

/// Internal codes as exported labels: isolated (0) becomes -1 and cluster
/// ids shift to start at 0.
std::vector<int> export_labels(std::span<const int> cp);

/// `index,label` rows.
void write_labels_csv(std::ostream& out, std::span<const int> labels);

/// Reads an `index,label` file back; indices must run 0..n-1 in order.
std::vector<int> read_labels_csv(const std::string& path);

}  // namespace sdc::cli
