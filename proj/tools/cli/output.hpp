#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kpp::cli {

/// %.17g; non-finite values print as nan, inf, -inf.
std::string format_double(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    const std::vector<std::string>& header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    /// Column parsed back to doubles (unparseable cells become nan).
    std::vector<double> column(const std::string& name) const;
    std::string str() const;
    void write(const std::filesystem::path& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Polyline plot with labelled axes; non-finite points break the line.
std::string render_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<Series>& series);
void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<Series>& series);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace kpp::cli
