#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fixtures {

inline std::string read(const std::string& name) {
    std::ifstream in(std::string(DSCORE_FIXTURE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const char* const kCaseStudies[] = {
    "uuid_copy",
    "fputs_color_cell_close",
    "fdisk_delete_all_partitions",
    "strv_length",
};

}  // namespace fixtures
