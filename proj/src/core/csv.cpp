#include "csv.hpp"

#include <charconv>

#include "errors.hpp"

namespace aggrekin {

std::string format_double(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary)
{
    if (!out_) throw contract_error("cannot open '" + path + "' for writing");
}

void CsvWriter::header(std::span<const std::string> columns)
{
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::sep()
{
    if (!first_in_row_) out_ << ',';
    first_in_row_ = false;
}

void CsvWriter::begin_row() { first_in_row_ = true; }

void CsvWriter::field(double v)
{
    sep();
    out_ << format_double(v);
}

void CsvWriter::field(long long v)
{
    sep();
    out_ << v;
}

void CsvWriter::end_row() { out_ << '\n'; }

void CsvWriter::row(std::span<const double> values)
{
    begin_row();
    for (double v : values) field(v);
    end_row();
}

} // namespace aggrekin
