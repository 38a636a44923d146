#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sesh {

// Base class for all errors raised by the library. CLI maps these to exit
// code 2 (I/O or parse failure) unless a more specific code applies.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input data; message carries a line number or byte offset.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

enum class LogLevel : int { error = 0, warn = 1, info = 2, debug = 3 };

// Verbosity is read once from the SESH_LOG environment variable
// (error|warn|info|debug or 0-3, default warn). All output goes to stderr.
LogLevel log_level();
void set_log_level(LogLevel level);
bool log_enabled(LogLevel level);
void log_message(LogLevel level, const std::string& msg);

void log_error(const std::string& msg);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

// Fixed-width little-endian encoding used by the index file format.
void put_u32(std::string& out, uint32_t v);
void put_u64(std::string& out, uint64_t v);
void put_i64(std::string& out, int64_t v);

class ByteReader {
public:
    ByteReader(const char* data, size_t size) : data_(data), size_(size) {}

    uint32_t u32();
    uint64_t u64();
    int64_t i64();
    std::string_view bytes(size_t n);
    size_t offset() const { return pos_; }
    size_t remaining() const { return size_ - pos_; }

private:
    void need(size_t n) const;
    const char* data_;
    size_t size_;
    size_t pos_ = 0;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Score/metric printing convention: fixed six decimal places everywhere a
// real number ends up in a run file, CSV or report.
std::string format_fixed6(double v);

}  // namespace sesh
