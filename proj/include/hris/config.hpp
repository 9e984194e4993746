/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 hris contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>

#include "hris/sim.hpp"

namespace hris {

/// Raised for unreadable, malformed or invalid configuration.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Reads a flat JSON object of configuration keys, then applies
/// `key=value` overrides in order. Values in overrides are parsed as JSON
/// and fall back to plain strings. A missing file is an error unless
/// `allow_defaults` is set, in which case built-in defaults are used.
/// An empty file counts as an empty object.
SweepConfig load_config(const std::filesystem::path& path, std::span<const std::string> overrides,
                        bool allow_defaults);

/// Same, starting from built-in defaults with no file.
SweepConfig default_config(std::span<const std::string> overrides = {});

/// Smaller preset (N = 64, 20 drops) for quick runs.
SweepConfig ci_preset();

}  // namespace hris
