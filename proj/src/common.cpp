#include "sesh/common.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

namespace sesh {

namespace {

LogLevel parse_level(const char* s) {
    if (s == nullptr || *s == '\0') return LogLevel::warn;
    std::string v(s);
    for (auto& c : v) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (v == "error" || v == "0") return LogLevel::error;
    if (v == "warn" || v == "warning" || v == "1") return LogLevel::warn;
    if (v == "info" || v == "2") return LogLevel::info;
    if (v == "debug" || v == "3") return LogLevel::debug;
    return LogLevel::warn;
}

LogLevel& level_ref() {
    static LogLevel level = parse_level(std::getenv("SESH_LOG"));
    return level;
}

const char* level_name(LogLevel level) {
    switch (level) {
        case LogLevel::error: return "error";
        case LogLevel::warn: return "warn";
        case LogLevel::info: return "info";
        case LogLevel::debug: return "debug";
    }
    return "?";
}

}  // namespace

LogLevel log_level() { return level_ref(); }
void set_log_level(LogLevel level) { level_ref() = level; }
bool log_enabled(LogLevel level) { return static_cast<int>(level) <= static_cast<int>(level_ref()); }

void log_message(LogLevel level, const std::string& msg) {
    if (!log_enabled(level)) return;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::fprintf(stderr, "sesh [%s] %s\n", level_name(level), msg.c_str());
}

void log_error(const std::string& msg) { log_message(LogLevel::error, msg); }
void log_warn(const std::string& msg) { log_message(LogLevel::warn, msg); }
void log_info(const std::string& msg) { log_message(LogLevel::info, msg); }
void log_debug(const std::string& msg) { log_message(LogLevel::debug, msg); }

void put_u32(std::string& out, uint32_t v) {
    char b[4];
    b[0] = static_cast<char>(v & 0xff);
    b[1] = static_cast<char>((v >> 8) & 0xff);
    b[2] = static_cast<char>((v >> 16) & 0xff);
    b[3] = static_cast<char>((v >> 24) & 0xff);
    out.append(b, 4);
}

void put_u64(std::string& out, uint64_t v) {
    put_u32(out, static_cast<uint32_t>(v & 0xffffffffu));
    put_u32(out, static_cast<uint32_t>(v >> 32));
}

void put_i64(std::string& out, int64_t v) { put_u64(out, static_cast<uint64_t>(v)); }

void ByteReader::need(size_t n) const {
    if (pos_ + n > size_) {
        throw ParseError("index file truncated at byte " + std::to_string(pos_));
    }
}

uint32_t ByteReader::u32() {
    need(4);
    const auto* p = reinterpret_cast<const unsigned char*>(data_ + pos_);
    pos_ += 4;
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint64_t ByteReader::u64() {
    uint64_t lo = u32();
    uint64_t hi = u32();
    return lo | (hi << 32);
}

int64_t ByteReader::i64() { return static_cast<int64_t>(u64()); }

std::string_view ByteReader::bytes(size_t n) {
    need(n);
    std::string_view v(data_ + pos_, n);
    pos_ += n;
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading file: " + path);
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("error writing file: " + path);
}

std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace sesh
