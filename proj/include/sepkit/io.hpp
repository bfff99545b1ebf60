#pragma once

#include <string>

#include "sepkit/dataset.hpp"

namespace sepkit {

enum class FileFormat { csv, libsvm };

/// CSV: label first column, features after, no header (a header row is
/// skipped when its first cell is not numeric). LIBSVM: label then
/// 1-based index:value pairs, absent indices are zero. Labels must be
/// {-1,+1}; files labeled {0,1} are remapped with a notice on stderr.
Dataset load_dataset(const std::string& path, FileFormat format);

/// Writes atomically (temp file + rename). CSV round-trips exactly.
void save_dataset(const Dataset& data, const std::string& path,
                  FileFormat format);

namespace detail {
/// Atomic text-file write used by every writer in the library.
void write_file_atomic(const std::string& path, const std::string& content);
/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);
}  // namespace detail

}  // namespace sepkit
