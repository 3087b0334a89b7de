// Copyright (c) 2026 The ybe authors
// SPDX-License-Identifier: MIT
//
// JSON request/response front end shared by the C API and the command line.
// Every command returns {"status": <exit code>, ...}; 0 means all checks
// passed, 1 means a check failed. Configuration problems are thrown.

#pragma once

#include <string>

#include "json.hpp"

namespace ybe {

nlohmann::json run_command(const std::string& name, const nlohmann::json& request);

nlohmann::json cmd_eval(const nlohmann::json& request);
nlohmann::json cmd_verify(const nlohmann::json& request);
nlohmann::json cmd_classify(const nlohmann::json& request);
nlohmann::json cmd_oracle(const nlohmann::json& request);
nlohmann::json cmd_sweep(const nlohmann::json& request);

}  // namespace ybe
