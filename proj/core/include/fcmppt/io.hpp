#pragma once

#include <string>

namespace fcmppt {

std::string read_file(const std::string& path);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

// printf("%.<sig>g") formatting; sig=9 for trace/dataset CSVs (byte-stable
// golden files), sig=17 for model files (lossless round trip).
std::string format_sig(double value, int significant_digits);

} // namespace fcmppt
