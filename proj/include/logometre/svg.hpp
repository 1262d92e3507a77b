#pragma once

#include "logometre/ca.hpp"
#include "logometre/cooccurrence.hpp"

#include <string>
#include <string_view>

namespace logometre {

std::string xml_escape(std::string_view text);

struct FactorMapOptions {
  std::size_t axis_x = 1;
  std::size_t axis_y = 2;
  bool size_by_mass = true;
  int width = 800;
  int height = 600;
  std::string title;
  const IsotopyClustering* clusters = nullptr;
};

/// Scatter of the row points on a factor plane, one labeled circle per lemma.
std::string factor_map_svg(const CaSolution& sol, const FactorMapOptions& options = {});

struct CloudOptions {
  double z_max = 10.0;
  double min_font = 9.0;
  double max_font = 34.0;
  std::size_t max_words = 60;
  int width = 520;
  int height = 380;
  std::string title;
};

/// Font size for an index value: linear in z clipped to [0, z_max].
double cloud_font_size(double z, const CloudOptions& options);

/// Word cloud of a pivot profile. Placement walks an Archimedean spiral whose
/// starting angle is derived from the lemma's hash, so the layout depends only
/// on the profile.
std::string pivot_cloud_svg(const PivotProfile& profile, const CloudOptions& options = {});

}  // namespace logometre
