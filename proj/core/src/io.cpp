// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 spiralscat contributors

#include "scat/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

#include <nlohmann/json.hpp>

namespace scat {

namespace {

using json = nlohmann::json;

template <typename T>
T read_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!in) throw io_error("unexpected end of file");
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

std::string meta_path(const std::string& path) { return path + ".meta.json"; }

}  // namespace

Signal read_wav(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);

    char tag[5] = {0};
    in.read(tag, 4);
    if (!in || std::strncmp(tag, "RIFF", 4) != 0)
        throw io_error(path + ": not a RIFF file");
    read_le<std::uint32_t>(in);  // riff size
    in.read(tag, 4);
    if (!in || std::strncmp(tag, "WAVE", 4) != 0)
        throw io_error(path + ": not a WAVE file");

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    Signal out;
    while (in.read(tag, 4)) {
        const std::uint32_t size = read_le<std::uint32_t>(in);
        if (std::strncmp(tag, "fmt ", 4) == 0) {
            format = read_le<std::uint16_t>(in);
            channels = read_le<std::uint16_t>(in);
            rate = read_le<std::uint32_t>(in);
            read_le<std::uint32_t>(in);  // byte rate
            read_le<std::uint16_t>(in);  // block align
            bits = read_le<std::uint16_t>(in);
            in.ignore(size > 16 ? size - 16 : 0);
            have_fmt = true;
        } else if (std::strncmp(tag, "data", 4) == 0) {
            if (!have_fmt) throw io_error(path + ": data chunk before fmt");
            if (channels < 1) throw io_error(path + ": no channels");
            const std::size_t bytes_per = bits / 8;
            const std::size_t frames = size / (bytes_per * channels);
            out.samples.reserve(frames);
            for (std::size_t i = 0; i < frames; ++i) {
                for (std::uint16_t c = 0; c < channels; ++c) {
                    double v = 0.0;
                    if (format == 1 && bits == 16) {
                        v = static_cast<std::int16_t>(read_le<std::uint16_t>(in)) /
                            32768.0;
                    } else if (format == 1 && bits == 24) {
                        std::uint32_t raw = 0;
                        for (int b = 0; b < 3; ++b)
                            raw |= static_cast<std::uint32_t>(
                                       static_cast<unsigned char>(in.get()))
                                   << (8 * b);
                        std::int32_t s = static_cast<std::int32_t>(raw << 8) >> 8;
                        v = s / 8388608.0;
                    } else if (format == 3 && bits == 32) {
                        const std::uint32_t raw = read_le<std::uint32_t>(in);
                        float f;
                        std::memcpy(&f, &raw, sizeof(f));
                        v = f;
                    } else {
                        throw io_error(path + ": unsupported WAV encoding (need "
                                              "PCM16/24 or float32)");
                    }
                    if (c == 0) out.samples.push_back(v);
                }
            }
            if (channels > 1 && warnings)
                warnings->push_back("multichannel input reduced to first channel");
            out.sample_rate = rate;
            return out;
        } else {
            in.ignore(size + (size & 1));
        }
    }
    throw io_error(path + ": missing data chunk");
}

void write_wav(const std::string& path, const Signal& signal) {
    signal.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    const std::uint32_t data_size =
        static_cast<std::uint32_t>(signal.samples.size() * 4);
    out.write("RIFF", 4);
    write_le<std::uint32_t>(out, 36 + data_size);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_le<std::uint32_t>(out, 16);
    write_le<std::uint16_t>(out, 3);  // IEEE float
    write_le<std::uint16_t>(out, 1);
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(signal.sample_rate));
    write_le<std::uint32_t>(out,
                            static_cast<std::uint32_t>(signal.sample_rate) * 4);
    write_le<std::uint16_t>(out, 4);
    write_le<std::uint16_t>(out, 32);
    out.write("data", 4);
    write_le<std::uint32_t>(out, data_size);
    for (double s : signal.samples) {
        const float f = static_cast<float>(s);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof(raw));
        write_le<std::uint32_t>(out, raw);
    }
    if (!out) throw io_error("short write to " + path);
}

void export_raw_tensor(const std::string& path, const std::vector<double>& values,
                       const std::vector<std::size_t>& shape,
                       const json& extra_meta) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    for (double v : values) {
        const float f = static_cast<float>(v);
        std::uint32_t raw;
        std::memcpy(&raw, &f, sizeof(raw));
        write_le<std::uint32_t>(out, raw);
    }
    if (!out) throw io_error("short write to " + path);

    json meta = extra_meta;
    meta["dtype"] = "float32";
    meta["byte_order"] = "little";
    meta["layout"] = "row_major";
    meta["shape"] = shape;
    std::ofstream mout(meta_path(path));
    if (!mout) throw io_error("cannot write " + meta_path(path));
    mout << meta.dump(2) << "\n";
}

void export_scalogram(const std::string& path, const Scalogram& x1) {
    json meta;
    meta["axes"] = {"time", "log_lambda1"};
    meta["hop"] = x1.hop;
    meta["sample_rate"] = x1.sample_rate;
    meta["Q"] = x1.Q;
    meta["J"] = x1.J;
    meta["freq_axis_hz"] = x1.freq_axis;
    meta["warnings"] = x1.warnings;
    export_raw_tensor(path, x1.values, {x1.frames, x1.bins}, meta);
}

void export_averaged(const std::string& path, const AveragedScalogram& s1) {
    json meta;
    meta["axes"] = {"time", "log_lambda1"};
    meta["hop"] = s1.hop;
    meta["sample_rate"] = s1.sample_rate;
    meta["T"] = s1.T;
    export_raw_tensor(path, s1.values, {s1.frames, s1.bins}, meta);
}

void export_tensor(const std::string& path, const ScatteringTensor& tensor) {
    json meta;
    meta["axes"] = {"time", "log_lambda1", "lambda2"};
    meta["hop"] = tensor.hop;
    meta["sample_rate"] = tensor.sample_rate;
    meta["mode"] = tensor.mode == ScatteringMode::time
                       ? "time"
                       : (tensor.mode == ScatteringMode::joint ? "joint" : "spiral");
    meta["averaging_T"] = tensor.averaging_T;
    meta["freq_axis_hz"] = tensor.freq_axis;
    meta["warnings"] = tensor.warnings;
    json axis = json::array();
    for (const auto& ix : tensor.lambda2_axis) {
        json e;
        e["alpha_hz"] = ix.alpha;
        e["beta_cpo"] = std::abs(ix.beta);
        e["gamma_cpo"] = std::abs(ix.gamma);
        e["signs"] = {ix.beta > 0 ? 1 : (ix.beta < 0 ? -1 : 0),
                      ix.gamma > 0 ? 1 : (ix.gamma < 0 ? -1 : 0)};
        axis.push_back(e);
    }
    meta["lambda2_axis"] = axis;
    export_raw_tensor(path, tensor.values,
                      {tensor.frames, tensor.bins, tensor.channels()}, meta);
}

std::pair<std::vector<float>, nlohmann::json> load_raw_tensor(
    const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::vector<float> values;
    while (true) {
        std::uint32_t raw;
        unsigned char buf[4];
        in.read(reinterpret_cast<char*>(buf), 4);
        if (!in) break;
        raw = static_cast<std::uint32_t>(buf[0]) |
              (static_cast<std::uint32_t>(buf[1]) << 8) |
              (static_cast<std::uint32_t>(buf[2]) << 16) |
              (static_cast<std::uint32_t>(buf[3]) << 24);
        float f;
        std::memcpy(&f, &raw, sizeof(f));
        values.push_back(f);
    }
    std::ifstream min(meta_path(path));
    if (!min) throw io_error("cannot open " + meta_path(path));
    json meta = json::parse(min, nullptr, true);
    return {std::move(values), std::move(meta)};
}

nlohmann::json filterbank_to_json(const WaveletFilterbank& bank, double T) {
    json doc;
    switch (bank.kind) {
        case BankKind::first_order_time: doc["kind"] = "first_order_time"; break;
        case BankKind::alpha_time: doc["kind"] = "alpha_time"; break;
        case BankKind::beta_logfreq: doc["kind"] = "beta_logfreq"; break;
        case BankKind::gamma_octave: doc["kind"] = "gamma_octave"; break;
    }
    doc["Q"] = bank.Q;
    doc["J"] = bank.J;
    doc["sample_rate"] = bank.sample_rate;
    json centers = json::array(), signs = json::array();
    for (const auto& m : bank.members) {
        centers.push_back(m.center);
        signs.push_back(m.sign);
    }
    doc["centers"] = centers;
    doc["signs"] = signs;
    doc["T"] = T;
    return doc;
}

}  // namespace scat
