#pragma once

#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace aggrekin {

// Shortest round-trip decimal form of a double (std::to_chars), so output
// bytes are platform-stable and re-parse to the identical value.
std::string format_double(double v);

// Minimal CSV emitter: fixed header, '\n' newlines, values formatted by
// format_double (integers as plain decimals).
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void header(std::span<const std::string> columns);
    void begin_row();
    void field(double v);
    void field(long long v);
    void end_row();
    void row(std::span<const double> values);

private:
    std::ofstream out_;
    bool first_in_row_ = true;
    void sep();
};

} // namespace aggrekin
