#pragma once

#include <string>

// Formats x with 12 significant digits, '.' decimal separator, no locale.
std::string format_number(double x);

// Writes content to path atomically (temp file + rename), or to stdout
// when path is empty. Throws std::runtime_error mentioning the path on
// failure.
void write_output(const std::string& path, const std::string& content);
