#pragma once

#include <filesystem>
#include <string>

#include "tiescan/sequence.hpp"

namespace tiescan {

enum class InputFormat { csv_vectors, adjacency_stack, adjacency_dir };

InputFormat parse_input_format(const std::string& s);
std::string to_string(InputFormat f);

// csv_vectors:     one numeric observation per row
// adjacency_stack: v-row blocks of 0/1 entries separated by blank lines
// adjacency_dir:   one adjacency matrix per file, lexicographic order
// Requires at least 4 observations.
ObservationSequence ingest(const std::filesystem::path& path, InputFormat format);

} // namespace tiescan
