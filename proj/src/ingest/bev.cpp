/* Copyright 2026 The Dataforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "dataforge/ingest/bev.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "dataforge/core/errors.hpp"

namespace dataforge::ingest {

BevRaster project_lidar_bev(std::span<const LidarPoint> points,
                            const BevGridConfig& cfg, std::string uri) {
  if (!(cfg.cell_size > 0) || !(cfg.x_range > 0) || !(cfg.y_range > 0)) {
    throw ConfigError("BEV grid needs positive cell_size and ranges");
  }
  BevRaster r;
  r.cols = static_cast<int>(std::ceil(2.0 * cfg.x_range / cfg.cell_size));
  r.rows = static_cast<int>(std::ceil(2.0 * cfg.y_range / cfg.cell_size));
  r.cells.assign(static_cast<std::size_t>(r.rows) * r.cols, 0.0f);

  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) continue;
    if (p.x < -cfg.x_range || p.x >= cfg.x_range) continue;
    if (p.y < -cfg.y_range || p.y >= cfg.y_range) continue;
    const auto col = static_cast<long>(std::floor((p.x + cfg.x_range) / cfg.cell_size));
    const auto row = static_cast<long>(std::floor((p.y + cfg.y_range) / cfg.cell_size));
    if (col < 0 || col >= r.cols || row < 0 || row >= r.rows) continue;
    float& cell = r.cells[static_cast<std::size_t>(row) * r.cols + col];
    if (cfg.mode == BevMode::kOccupancy) {
      cell = 1.0f;
    } else {
      const double v = std::isfinite(p.intensity) ? std::clamp(p.intensity, 0.0, 1.0) : 0.0;
      cell = std::max(cell, static_cast<float>(v));
    }
  }

  r.media.kind = MediaKind::kImage;
  r.media.camera = CameraId::kLidarBev;
  r.media.frame_count = 1;
  r.media.width = r.cols;
  r.media.height = r.rows;
  r.media.uri = std::move(uri);
  return r;
}

void write_pgm(const BevRaster& raster, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "P5\n" << raster.cols << " " << raster.rows << "\n255\n";
  std::vector<unsigned char> bytes(raster.cells.size());
  std::transform(raster.cells.begin(), raster.cells.end(), bytes.begin(), [](float v) {
    return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
  });
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<LidarPoint> read_lidar_bin(const std::filesystem::path& path,
                                       int fields_per_point,
                                       double intensity_scale) {
  if (fields_per_point < 4) throw ConfigError("a point needs at least x, y, z, intensity");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<float> raw;
  float v;
  while (in.read(reinterpret_cast<char*>(&v), sizeof v)) raw.push_back(v);
  if (raw.size() % static_cast<std::size_t>(fields_per_point) != 0) {
    throw DataError(path.string() + ": size is not a multiple of the point stride");
  }
  std::vector<LidarPoint> points;
  points.reserve(raw.size() / fields_per_point);
  for (std::size_t i = 0; i < raw.size(); i += fields_per_point) {
    points.push_back({raw[i], raw[i + 1], raw[i + 2],
                      std::clamp(raw[i + 3] * intensity_scale, 0.0, 1.0)});
  }
  return points;
}

}  // namespace dataforge::ingest
