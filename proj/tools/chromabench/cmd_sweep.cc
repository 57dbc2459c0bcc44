// Copyright 2026 the chromabench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "chromabench/codec.h"
#include "chromabench/image.h"
#include "chromabench/imageio.h"
#include "chromabench/metrics.h"
#include "common.h"

namespace fs = std::filesystem;

namespace chromabench::cli {
namespace {

struct SweepConfig {
  ColorSpace space = ColorSpace::kYuv;
  int op_point = 3;
  int chroma_channels = kSubbandCount;
  std::string id;     // e.g. yuv-c64-q1
  std::string codec;  // e.g. yuv-c64, one RD curve per codec label
};

struct Manifest {
  std::string corpus;
  std::string output;
  std::vector<SweepConfig> configs;
  int parallelism = 0;
  bool pooled = false;
  bool timing = false;
  nlohmann::json raw;
};

struct TaskResult {
  bool ok = false;
  std::string error;
  double bpp = 0.0;             // payload bits per pixel
  double bpp_component[4] = {0, 0, 0, 0};
  double payload_bits = 0.0;
  size_t pixels = 0;
  MetricReport metrics;
  double wall_ms = 0.0;
};

Manifest ParseManifest(const std::string& path) {
  const nlohmann::json j = LoadJsonFile(path);
  Manifest m;
  m.raw = j;
  try {
    m.corpus = j.at("corpus").get<std::string>();
    m.output = j.at("output").get<std::string>();
    m.parallelism = j.value("parallelism", 0);
    m.timing = j.value("timing", false);
    const std::string agg = j.value("aggregation", std::string("mean"));
    if (agg == "pooled") {
      m.pooled = true;
    } else if (agg != "mean") {
      throw Error(path + ": aggregation must be \"mean\" or \"pooled\"");
    }
    const std::vector<std::string> spaces =
        j.value("spaces", std::vector<std::string>{"yuv"});
    const std::vector<int> ops =
        j.value("op_points", std::vector<int>{1, 2, 3, 4});
    const std::vector<int> chromas =
        j.value("chroma_channels", std::vector<int>{kSubbandCount});
    if (spaces.empty() || ops.empty() || chromas.empty()) {
      throw Error(path + ": spaces, op_points and chroma_channels must be "
                         "non-empty");
    }
    for (const std::string& name : spaces) {
      const ColorSpace space = ColorSpaceFromName(name);
      if (!IsCodingSpace(space)) {
        throw Error(path + ": " + name + " is not a coding space");
      }
      // The single-branch configuration has no chroma split, so rgb crosses
      // only the operating points.
      const std::vector<int> cc =
          space == ColorSpace::kSrgb ? std::vector<int>{kSubbandCount}
                                     : chromas;
      for (int chroma : cc) {
        if (chroma < 1 || chroma > kSubbandCount) {
          throw Error(path + ": chroma_channels must lie in 1..64");
        }
        for (int op : ops) {
          if (op < kOperatingPointMin || op > kOperatingPointMax) {
            throw Error(path + ": op_points must lie in 1..4");
          }
          SweepConfig cfg;
          cfg.space = space;
          cfg.op_point = op;
          cfg.chroma_channels = chroma;
          char buf[48];
          std::snprintf(buf, sizeof(buf), "%s-c%02d", name.c_str(), chroma);
          cfg.codec = buf;
          std::snprintf(buf, sizeof(buf), "%s-c%02d-q%d", name.c_str(), chroma,
                        op);
          cfg.id = buf;
          m.configs.push_back(cfg);
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  return m;
}

TaskResult RunTask(const std::string& image_path, const SweepConfig& cfg) {
  TaskResult r;
  const auto start = std::chrono::steady_clock::now();
  try {
    const PlanarImage image = ReadImage(image_path);
    EncodeConfig config;
    config.space = cfg.space;
    config.operating_point = cfg.op_point;
    config.chroma_channels = cfg.chroma_channels;
    const EncodeResult encoded = EncodeImage(image, config);
    const PlanarImage decoded = DecodeImage(encoded.bitstream);
    r.metrics = ComputeMetrics(image, decoded);
    r.pixels = image.pixel_count();
    for (const ComponentInfo& comp : encoded.trace.components) {
      r.bpp_component[comp.id] = comp.bytes * 8.0 / r.pixels;
      r.payload_bits += comp.bytes * 8.0;
    }
    r.bpp = r.payload_bits / static_cast<double>(r.pixels);
    r.ok = true;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  return r;
}

std::string CsvQuote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct MetricColumn {
  const char* name;
  double (*get)(const MetricReport&);
};

const MetricColumn kRdMetrics[] = {
    {"psnr", [](const MetricReport& r) { return r.psnr; }},
    {"msssim", [](const MetricReport& r) { return r.msssim; }},
    {"msssim_db", [](const MetricReport& r) { return r.msssim_db; }},
    {"ciede2000", [](const MetricReport& r) { return r.ciede2000; }},
    {"ciede_quality", [](const MetricReport& r) { return r.ciede_quality; }},
};

void RunSweep(const std::string& manifest_path) {
  const Manifest manifest = ParseManifest(manifest_path);
  const std::vector<std::string> images = ListImageFiles(manifest.corpus);
  if (images.empty()) {
    throw Error("no images found in " + manifest.corpus);
  }
  try {
    fs::create_directories(manifest.output);
  } catch (const fs::filesystem_error& e) {
    throw Error(std::string("cannot create output directory: ") + e.what());
  }

  // Row order is fixed by (image id, config id) regardless of scheduling.
  std::vector<size_t> config_order(manifest.configs.size());
  std::iota(config_order.begin(), config_order.end(), 0);
  std::sort(config_order.begin(), config_order.end(), [&](size_t a, size_t b) {
    return manifest.configs[a].id < manifest.configs[b].id;
  });

  const size_t n_tasks = images.size() * manifest.configs.size();
  std::vector<TaskResult> results(n_tasks);
  std::atomic<size_t> next{0};
  const int threads = ResolveThreads(manifest.parallelism);
  auto worker = [&]() {
    for (;;) {
      const size_t t = next.fetch_add(1);
      if (t >= n_tasks) return;
      const size_t img = t / manifest.configs.size();
      const size_t cfg = t % manifest.configs.size();
      results[t] = RunTask((fs::path(manifest.corpus) / images[img]).string(),
                           manifest.configs[cfg]);
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // Per-image report.
  std::string report = CsvConfigComment();
  report += "# manifest: " + manifest.raw.dump() + "\n";
  report +=
      "image,config,space,op_point,chroma_channels,bpp,bpp_c0,bpp_c1,bpp_c2,"
      "bpp_c3,mse,psnr,psnr_r,psnr_g,psnr_b,msssim,msssim_db,msssim_scales,"
      "ciede2000,ciede_quality";
  if (manifest.timing) report += ",wall_ms";
  report += "\n";
  std::string failures = "image,config,error\n";
  size_t failure_count = 0;
  for (size_t img = 0; img < images.size(); ++img) {
    for (size_t oc = 0; oc < config_order.size(); ++oc) {
      const size_t cfg = config_order[oc];
      const SweepConfig& c = manifest.configs[cfg];
      const TaskResult& r = results[img * manifest.configs.size() + cfg];
      if (!r.ok) {
        ++failure_count;
        failures += images[img] + "," + c.id + "," + CsvQuote(r.error) + "\n";
        continue;
      }
      const MetricReport& m = r.metrics;
      report += images[img] + "," + c.id + "," + ColorSpaceName(c.space) +
                "," + std::to_string(c.op_point) + "," +
                std::to_string(c.chroma_channels);
      for (double v :
           {r.bpp, r.bpp_component[0], r.bpp_component[1], r.bpp_component[2],
            r.bpp_component[3], m.mse, m.psnr, m.psnr_channel[0],
            m.psnr_channel[1], m.psnr_channel[2], m.msssim, m.msssim_db}) {
        report += "," + Fmt(v);
      }
      report += "," + std::to_string(m.msssim_scales);
      report += "," + Fmt(m.ciede2000) + "," + Fmt(m.ciede_quality);
      if (manifest.timing) report += "," + Fmt(r.wall_ms);
      report += "\n";
    }
  }

  // Aggregated RD points, one curve per codec label per metric.
  std::string rd = CsvConfigComment();
  rd += "# aggregation: ";
  rd += manifest.pooled ? "pooled" : "mean";
  rd += "\ncodec,metric,rate_bpp,distortion\n";
  std::vector<std::string> codecs;
  for (size_t oc : config_order) {
    const std::string& label = manifest.configs[oc].codec;
    if (std::find(codecs.begin(), codecs.end(), label) == codecs.end()) {
      codecs.push_back(label);
    }
  }
  for (const std::string& codec : codecs) {
    for (const MetricColumn& metric : kRdMetrics) {
      for (int op = kOperatingPointMin; op <= kOperatingPointMax; ++op) {
        // Locate the config with this codec label and op point, if any.
        const SweepConfig* cfg = nullptr;
        size_t cfg_index = 0;
        for (size_t i = 0; i < manifest.configs.size(); ++i) {
          if (manifest.configs[i].codec == codec &&
              manifest.configs[i].op_point == op) {
            cfg = &manifest.configs[i];
            cfg_index = i;
            break;
          }
        }
        if (cfg == nullptr) continue;
        double bpp_sum = 0.0;
        double dist_sum = 0.0;
        double bits_sum = 0.0;
        double pixel_sum = 0.0;
        double weighted_dist = 0.0;
        size_t n_ok = 0;
        for (size_t img = 0; img < images.size(); ++img) {
          const TaskResult& r =
              results[img * manifest.configs.size() + cfg_index];
          if (!r.ok) continue;
          ++n_ok;
          bpp_sum += r.bpp;
          dist_sum += metric.get(r.metrics);
          bits_sum += r.payload_bits;
          pixel_sum += static_cast<double>(r.pixels);
          weighted_dist +=
              metric.get(r.metrics) * static_cast<double>(r.pixels);
        }
        if (n_ok == 0) continue;
        double rate;
        double dist;
        if (manifest.pooled) {
          rate = bits_sum / pixel_sum;
          dist = weighted_dist / pixel_sum;
        } else {
          rate = bpp_sum / static_cast<double>(n_ok);
          dist = dist_sum / static_cast<double>(n_ok);
        }
        rd += codec;
        rd += ",";
        rd += metric.name;
        rd += "," + Fmt(rate) + "," + Fmt(dist) + "\n";
      }
    }
  }

  const fs::path out_dir(manifest.output);
  WriteTextOutput((out_dir / "report.csv").string(), report);
  WriteTextOutput((out_dir / "rd_points.csv").string(), rd);
  WriteTextOutput((out_dir / "failures.csv").string(), failures);

  nlohmann::json meta;
  meta["manifest"] = manifest.raw;
  meta["images"] = images;
  meta["aggregation"] = manifest.pooled ? "pooled" : "mean";
  meta["parallelism_used"] = threads;
  meta["failures"] = failure_count;
  meta["configs"] = nlohmann::json::array();
  for (size_t oc : config_order) {
    const SweepConfig& c = manifest.configs[oc];
    meta["configs"].push_back({{"id", c.id},
                               {"codec", c.codec},
                               {"space", ColorSpaceName(c.space)},
                               {"op_point", c.op_point},
                               {"chroma_channels", c.chroma_channels}});
  }
  meta["config"] = ConfigEchoJson();
  WriteTextOutput((out_dir / "sweep.json").string(), meta.dump(2) + "\n");

  std::fprintf(stderr,
               "chromabench: sweep finished: %zu images x %zu configs, "
               "%zu failures\n",
               images.size(), manifest.configs.size(), failure_count);
}

}  // namespace

void RegisterSweep(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "sweep", "Encode and measure a corpus across a config grid described "
               "by a JSON manifest");
  auto manifest = std::make_shared<std::string>();
  cmd->add_option("-m,--manifest", *manifest, "Manifest JSON path")
      ->required();
  cmd->callback([manifest]() { RunSweep(*manifest); });
}

}  // namespace chromabench::cli
