#pragma once

// Stream ingestion: text floats (one per line) and little-endian binary words.

#include <dcube/error.hpp>

#include <charconv>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace dcube {

enum class InputFormat { TextFloats, BinaryU32, BinaryU64 };

inline InputFormat parse_input_format(std::string_view name) {
    if (name == "text") return InputFormat::TextFloats;
    if (name == "u32") return InputFormat::BinaryU32;
    if (name == "u64") return InputFormat::BinaryU64;
    throw DomainError("unknown input format '" + std::string(name) + "' (expected text, u32 or u64)");
}

/// One decimal number per line, each in [0,1). A final newline is optional;
/// any other blank line is an error. Errors name the 1-based line.
inline std::vector<double> read_text_floats(std::istream& in) {
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    std::size_t pending_blank = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v(line);
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\r')) v.remove_suffix(1);
        if (v.empty()) {
            if (pending_blank == 0) pending_blank = lineno;
            continue;
        }
        if (pending_blank != 0)
            throw DomainError("line " + std::to_string(pending_blank) + ": empty line");
        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || ptr != v.data() + v.size())
            throw DomainError("line " + std::to_string(lineno) + ": not a number: '" + std::string(v) + "'");
        if (!(x >= 0.0 && x < 1.0))
            throw DomainError("line " + std::to_string(lineno) + ": value " + std::string(v) +
                              " outside [0,1)");
        out.push_back(x);
    }
    return out;
}

/// Fixed-width little-endian unsigned words w mapped to w / 2^width.
inline std::vector<double> read_binary_words(std::istream& in, int width_bytes) {
    if (width_bytes != 4 && width_bytes != 8) throw DomainError("binary input: width must be 4 or 8 bytes");
    const std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() % width_bytes != 0)
        throw DomainError("binary input: " + std::to_string(data.size()) + " bytes is not a multiple of " +
                          std::to_string(width_bytes) + " (trailing bytes at offset " +
                          std::to_string(data.size() - data.size() % width_bytes) + ")");
    const double scale = width_bytes == 4 ? 0x1.0p-32 : 0x1.0p-64;
    std::vector<double> out;
    out.reserve(data.size() / width_bytes);
    for (std::size_t off = 0; off < data.size(); off += width_bytes) {
        std::uint64_t w = 0;
        for (int b = width_bytes - 1; b >= 0; --b)
            w = (w << 8) | static_cast<unsigned char>(data[off + b]);
        double x = static_cast<double>(w) * scale;
        // u64 words near 2^64 round up to 1.0 in binary64.
        if (x >= 1.0) x = 0x1.fffffffffffffp-1;
        out.push_back(x);
    }
    return out;
}

inline std::vector<double> read_stream(std::istream& in, InputFormat fmt) {
    switch (fmt) {
    case InputFormat::TextFloats: return read_text_floats(in);
    case InputFormat::BinaryU32: return read_binary_words(in, 4);
    case InputFormat::BinaryU64: return read_binary_words(in, 8);
    }
    throw DomainError("unknown input format");
}

} // namespace dcube
