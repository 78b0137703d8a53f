// Copyright 2026  sasvkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sasvkit/manifest.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sasv {

std::string manifest_to_json(const RunManifest &manifest) {
  nlohmann::json j;
  j["subcommand"] = manifest.subcommand;
  j["tool_version"] = manifest.tool_version;
  j["inputs"] = manifest.inputs;
  j["config"] = manifest.config;
  j["outputs"] = manifest.outputs;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string &path, const RunManifest &manifest) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << manifest_to_json(manifest);
}

}  // namespace sasv
