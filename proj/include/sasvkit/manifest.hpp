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

#pragma once

#include <map>
#include <string>

namespace sasv {

inline constexpr const char *kToolVersion = "0.1.0";

/// Record of one CLI run: subcommand, resolved input paths and config
/// values. Contains nothing time- or host-dependent, so re-running with an
/// identical manifest reproduces identical outputs.
struct RunManifest {
  std::string subcommand;
  std::string tool_version = kToolVersion;
  std::map<std::string, std::string> inputs;   // name -> resolved path
  std::map<std::string, std::string> config;   // name -> value
  std::map<std::string, std::string> outputs;  // name -> resolved path
};

std::string manifest_to_json(const RunManifest &manifest);
void write_manifest(const std::string &path, const RunManifest &manifest);

}  // namespace sasv
