// Copyright 2026 The bevlu Authors
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

#ifndef BEVLU__CONFIG_HPP_
#define BEVLU__CONFIG_HPP_

#include <json.hpp>

#include "bevlu/experiment.hpp"

namespace bevlu
{

class ConfigError : public Error
{
public:
  using Error::Error;
};

/// Full effective config; every key is written so the snapshot is self-describing.
nlohmann::json config_to_json(const ExperimentConfig & cfg);


/// Keys absent from `j` keep their defaults; unknown keys and wrong types throw ConfigError.
ExperimentConfig config_from_json(const nlohmann::json & j);

}  // namespace bevlu

#endif  // BEVLU__CONFIG_HPP_
