#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace newsnet {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(std::string_view name) const;  // throws if absent
};

// RFC-4180 style fields (quotes, doubled quotes); no multiline fields.
CsvTable read_csv(const std::string& path);
std::vector<std::string> split_csv_line(std::string_view line);
std::string csv_escape(std::string_view field);

}  // namespace newsnet
