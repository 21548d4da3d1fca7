#include "fueterlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fueterlab {

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void prepare_out_dir(const std::filesystem::path& dir, bool force) {
  namespace fs = std::filesystem;
  if (fs::exists(dir)) {
    if (!force)
      throw std::runtime_error("output directory exists: " + dir.string() +
                               " (pass --force to overwrite)");
  } else {
    fs::create_directories(dir);
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& comments,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  for (const auto& c : comments) os << "# " << c << "\n";
  for (size_t i = 0; i < columns.size(); ++i) os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) os << row[i] << (i + 1 < row.size() ? "," : "\n");
  }
}

void write_svg_curves(const std::filesystem::path& path, const Eigen::VectorXd& s,
                      const Eigen::MatrixXd& curves, const std::string& title) {
  const double w = 640, h = 420, ml = 50, mr = 15, mt = 30, mb = 35;
  double ymin = curves.minCoeff(), ymax = curves.maxCoeff();
  if (ymax - ymin < 1e-12) {
    ymax += 1.0;
    ymin -= 1.0;
  }
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  const double x0 = s[0], x1 = s[s.size() - 1];
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); };
  auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * (h - mt - mb); };
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  os << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"13\">" << title
     << "</text>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
     << h - mb << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
     << "\" stroke=\"black\"/>\n";
  if (ymin < 0 && ymax > 0)
    os << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << w - mr << "\" y2=\""
       << py(0) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  os << "<text x=\"" << ml - 6 << "\" y=\"" << py(ymin) << "\" text-anchor=\"end\" font-size=\"10\">"
     << g17(ymin).substr(0, 8) << "</text>\n";
  os << "<text x=\"" << ml - 6 << "\" y=\"" << py(ymax) << "\" text-anchor=\"end\" font-size=\"10\">"
     << g17(ymax).substr(0, 8) << "</text>\n";
  os << "<text x=\"" << px(x0) << "\" y=\"" << h - mb + 14
     << "\" text-anchor=\"middle\" font-size=\"10\">" << g17(x0).substr(0, 6) << "</text>\n";
  os << "<text x=\"" << px(x1) << "\" y=\"" << h - mb + 14
     << "\" text-anchor=\"middle\" font-size=\"10\">" << g17(x1).substr(0, 6) << "</text>\n";
  for (int r = 0; r < curves.rows(); ++r) {
    os << "<polyline fill=\"none\" stroke=\"hsl(" << (r * 47) % 360
       << ",60%,40%)\" stroke-width=\"1\" points=\"";
    for (int t = 0; t < s.size(); ++t) os << px(s[t]) << "," << py(curves(r, t)) << " ";
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

void RunManifest::write(const std::filesystem::path& dir) const {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = nlohmann::json::parse(config_json);
  j["artifacts"] = artifacts;
  j["wall_clock_sec"] = wall_clock_sec;
  j["version"] = kVersion;
  j["input_hash"] = input_hash;
  std::ofstream os(dir / "manifest.json");
  if (!os) throw std::runtime_error("cannot write manifest");
  os << j.dump(2) << "\n";
}

}  // namespace fueterlab
