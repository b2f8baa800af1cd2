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
#ifndef DATAFORGE_INGEST_BEV_HPP_
#define DATAFORGE_INGEST_BEV_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dataforge/core/types.hpp"

namespace dataforge::ingest {

struct LidarPoint {
  double x = 0, y = 0, z = 0;  // meters, ego frame
  double intensity = 0;        // [0, 1]
};

enum class BevMode { kOccupancy, kMaxIntensity };

struct BevGridConfig {
  double x_range = 50.0;  // grid covers [-x_range, x_range)
  double y_range = 50.0;
  double cell_size = 0.25;
  BevMode mode = BevMode::kOccupancy;
};

// Row-major grid of [0, 1] values. Row index follows y, column index follows
// x, both increasing with the coordinate:
//   col = floor((x + x_range) / cell_size), row = floor((y + y_range) / cell_size)
// so the ego origin lands in cell (rows / 2, cols / 2) for the default grid.
struct BevRaster {
  int rows = 0;
  int cols = 0;
  std::vector<float> cells;
  MediaRef media;  // camera LIDAR_BEV, width = cols, height = rows

  float at(int row, int col) const { return cells[static_cast<std::size_t>(row) * cols + col]; }
};

// Throws ConfigError for a non-positive cell size or range. Points that are
// non-finite or fall outside the grid are dropped.
BevRaster project_lidar_bev(std::span<const LidarPoint> points,
                            const BevGridConfig& cfg, std::string uri = "");

// Binary PGM (P5), cell value scaled to 0..255.
void write_pgm(const BevRaster& raster, const std::filesystem::path& path);

// nuScenes-style float32 point files: `fields_per_point` floats per point with
// x, y, z, intensity first. Intensity is multiplied by intensity_scale and
// clamped to [0, 1].
std::vector<LidarPoint> read_lidar_bin(const std::filesystem::path& path,
                                       int fields_per_point = 5,
                                       double intensity_scale = 1.0 / 255.0);

}  // namespace dataforge::ingest

#endif  // DATAFORGE_INGEST_BEV_HPP_
