// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "scat/common.hpp"
#include "scat/filterbank.hpp"
#include "scat/scalogram.hpp"
#include "scat/scattering.hpp"

namespace scat {

/// Raised on unreadable or unsupported files.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Read a PCM 16/24-bit or 32-bit float WAV. Multichannel input is reduced
/// to its first channel with a warning.
Signal read_wav(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Write a 32-bit float mono WAV.
void write_wav(const std::string& path, const Signal& signal);

/// Raw little-endian float32 tensor (row-major) plus a `.meta.json`
/// sidecar written next to it.
void export_raw_tensor(const std::string& path, const std::vector<double>& values,
                       const std::vector<std::size_t>& shape,
                       const nlohmann::json& extra_meta);

void export_scalogram(const std::string& path, const Scalogram& x1);
void export_averaged(const std::string& path, const AveragedScalogram& s1);
void export_tensor(const std::string& path, const ScatteringTensor& tensor);

/// Load a raw tensor and its sidecar metadata.
std::pair<std::vector<float>, nlohmann::json> load_raw_tensor(const std::string& path);

/// Filterbank parameters as a JSON document (schema in docs/).
nlohmann::json filterbank_to_json(const WaveletFilterbank& bank, double T = 0.0);

}  // namespace scat
