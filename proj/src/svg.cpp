#include "logometre/svg.hpp"

#include "logometre/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace logometre {

namespace {

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};

std::size_t codepoints(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o) const { return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1; }
};

}  // namespace

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string factor_map_svg(const CaSolution& sol, const FactorMapOptions& o) {
  const auto points = project(sol, o.axis_x, o.axis_y);
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& p : points) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const auto pad = [](double& lo, double& hi) {
    if (hi - lo <= 0.0) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double m = 0.08 * (hi - lo);
    lo -= m;
    hi += m;
  };
  pad(xmin, xmax);
  pad(ymin, ymax);
  const double margin = 40.0;
  const double w = o.width - 2 * margin;
  const double h = o.height - 2 * margin;
  const auto sx = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * w; };
  const auto sy = [&](double y) { return margin + (ymax - y) / (ymax - ymin) * h; };

  double max_mass = 0.0;
  for (double m : sol.row_masses) max_mass = std::max(max_mass, m);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" class=\"factor-map\" width=\"" + std::to_string(o.width) +
         "\" height=\"" + std::to_string(o.height) + "\" viewBox=\"0 0 " + std::to_string(o.width) + " " +
         std::to_string(o.height) + "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!o.title.empty()) {
    svg += "<text x=\"" + px(margin) + "\" y=\"24\" font-size=\"15\" font-weight=\"bold\">" +
           xml_escape(o.title) + "</text>\n";
  }
  svg += "<line class=\"axis\" x1=\"" + px(sx(xmin)) + "\" y1=\"" + px(sy(0)) + "\" x2=\"" + px(sx(xmax)) +
         "\" y2=\"" + px(sy(0)) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  svg += "<line class=\"axis\" x1=\"" + px(sx(0)) + "\" y1=\"" + px(sy(ymin)) + "\" x2=\"" + px(sx(0)) +
         "\" y2=\"" + px(sy(ymax)) + "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  const auto axis_label = [&](std::size_t axis) {
    return "Axis " + std::to_string(axis) + " (" + px(sol.inertia_pct[axis - 1]) + "%)";
  };
  svg += "<text x=\"" + px(o.width - margin) + "\" y=\"" + px(o.height - 10.0) +
         "\" font-size=\"12\" text-anchor=\"end\">" + axis_label(o.axis_x) + "</text>\n";
  svg += "<text x=\"12\" y=\"" + px(margin - 8.0) + "\" font-size=\"12\">" + axis_label(o.axis_y) + "</text>\n";

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    double r = 3.0;
    if (o.size_by_mass && max_mass > 0.0) r = 2.0 + 6.0 * std::sqrt(sol.row_masses[i] / max_mass);
    std::string color = "#1f77b4";
    if (o.clusters) color = kPalette[o.clusters->assignment[i] % std::size(kPalette)];
    svg += "<g class=\"point\"><circle cx=\"" + px(sx(p.x)) + "\" cy=\"" + px(sy(p.y)) + "\" r=\"" + px(r) +
           "\" fill=\"" + color + "\" fill-opacity=\"0.6\"/><text x=\"" + px(sx(p.x) + r + 1.0) + "\" y=\"" +
           px(sy(p.y) + 4.0) + "\" font-size=\"11\">" + xml_escape(p.lemma) + "</text></g>\n";
  }
  svg += "</svg>\n";
  return svg;
}

double cloud_font_size(double z, const CloudOptions& o) {
  const double clipped = std::clamp(z, 0.0, o.z_max);
  return o.min_font + (o.max_font - o.min_font) * (o.z_max > 0.0 ? clipped / o.z_max : 0.0);
}

std::string pivot_cloud_svg(const PivotProfile& profile, const CloudOptions& o) {
  const double cx = o.width / 2.0;
  const double cy = o.height / 2.0 + 10.0;
  std::vector<Box> placed;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" class=\"pivot-cloud\" width=\"" + std::to_string(o.width) +
         "\" height=\"" + std::to_string(o.height) + "\" viewBox=\"0 0 " + std::to_string(o.width) + " " +
         std::to_string(o.height) + "\" font-family=\"sans-serif\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  if (!o.title.empty()) {
    svg += "<text x=\"10\" y=\"20\" font-size=\"14\" font-weight=\"bold\">" + xml_escape(o.title) + "</text>\n";
  }

  const auto width_of = [](std::string_view word, double size) {
    return 0.6 * size * static_cast<double>(codepoints(word));
  };
  {
    const double size = o.max_font;
    const double bw = width_of(profile.pivot, size);
    placed.push_back({cx - bw / 2, cy - size, cx + bw / 2, cy + size * 0.25});
    svg += "<text class=\"pivot\" x=\"" + px(cx) + "\" y=\"" + px(cy) + "\" font-size=\"" + px(size) +
           "\" font-weight=\"bold\" text-anchor=\"middle\" fill=\"#000\">" + xml_escape(profile.pivot) +
           "</text>\n";
  }

  const auto count = std::min(o.max_words, profile.entries.size());
  for (std::size_t i = 0; i < count; ++i) {
    const auto& e = profile.entries[i];
    const double size = cloud_font_size(e.z, o);
    const double bw = width_of(e.lemma, size);
    const double start = static_cast<double>(fnv1a64(e.lemma) % 3600) / 3600.0 * 2.0 * std::numbers::pi;
    for (int step = 1; step < 4000; ++step) {
      const double theta = 0.12 * step;
      const double radius = 2.2 * theta;
      const double x = cx + radius * std::cos(theta + start);
      const double y = cy + 0.7 * radius * std::sin(theta + start);
      const Box box{x - bw / 2, y - size, x + bw / 2, y + size * 0.25};
      if (box.x0 < 2 || box.y0 < 26 || box.x1 > o.width - 2 || box.y1 > o.height - 2) continue;
      if (std::any_of(placed.begin(), placed.end(), [&](const Box& b) { return b.overlaps(box); })) continue;
      placed.push_back(box);
      svg += "<text class=\"cooccurrent\" data-z=\"" + px(e.z) + "\" x=\"" + px(x) + "\" y=\"" + px(y) +
             "\" font-size=\"" + px(size) + "\" text-anchor=\"middle\" fill=\"" +
             kPalette[i % std::size(kPalette)] + "\">" + xml_escape(e.lemma) + "</text>\n";
      break;
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace logometre
