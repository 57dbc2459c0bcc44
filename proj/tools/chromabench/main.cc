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

#include <iostream>

#include "chromabench/image.h"
#include "common.h"

int main(int argc, char** argv) {
  CLI::App app{"chromabench: color-space evaluation bench for block codecs"};
  app.require_subcommand(1);

  namespace cli = chromabench::cli;
  cli::RegisterConvert(app);
  cli::RegisterMetrics(app);
  cli::RegisterEncode(app);
  cli::RegisterDecode(app);
  cli::RegisterSweep(app);
  cli::RegisterBd(app);
  cli::RegisterPlot(app);
  cli::RegisterImpulse(app);
  cli::RegisterComplexity(app);
  cli::RegisterPresets(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const cli::UsageError& e) {
    std::cerr << "chromabench: " << e.what() << std::endl;
    return 1;
  } catch (const chromabench::Error& e) {
    std::cerr << "chromabench: " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "chromabench: internal error: " << e.what() << std::endl;
    return 3;
  }
  return 0;
}
