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

#ifndef CHROMABENCH_TOOLS_COMMON_H_
#define CHROMABENCH_TOOLS_COMMON_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace chromabench {
struct MetricReport;
}

namespace chromabench::cli {

// Exit codes: 0 success, 1 usage, 2 data error, 3 internal.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Stable decimal formatting shared by every CSV writer, so outputs are
// byte-identical across runs and parallelism degrees.
std::string Fmt(double v);

// Worker count: CHROMABENCH_THREADS wins, then `requested` (0 = auto).
int ResolveThreads(int requested);

// Provenance blocks embedded in outputs.
nlohmann::json ColorConfigJson();
nlohmann::json PresetsJson();
nlohmann::json QuantStepsJson();
nlohmann::json ConfigEchoJson();

// The echo as CSV comment lines, each starting with "# ".
std::string CsvConfigComment();

// Writes text to a path, or stdout when path is empty.
void WriteTextOutput(const std::string& path, const std::string& text);

// Parses a JSON file, mapping parse failures to data errors.
nlohmann::json LoadJsonFile(const std::string& path);

// Sorted image files (.png/.ppm/.pnm) in a directory, filenames only.
std::vector<std::string> ListImageFiles(const std::string& dir);

nlohmann::json MetricReportJson(const chromabench::MetricReport& r);

void RegisterConvert(CLI::App& app);
void RegisterMetrics(CLI::App& app);
void RegisterEncode(CLI::App& app);
void RegisterDecode(CLI::App& app);
void RegisterSweep(CLI::App& app);
void RegisterBd(CLI::App& app);
void RegisterPlot(CLI::App& app);
void RegisterImpulse(CLI::App& app);
void RegisterComplexity(CLI::App& app);
void RegisterPresets(CLI::App& app);

}  // namespace chromabench::cli

#endif  // CHROMABENCH_TOOLS_COMMON_H_
