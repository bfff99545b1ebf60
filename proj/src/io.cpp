#include "sepkit/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace sepkit {

namespace detail {

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      fail(SEPKIT_ERR_IO, "cannot open for writing: " + tmp);
    }
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      fail(SEPKIT_ERR_IO, "write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    fail(SEPKIT_ERR_IO, "rename failed: " + path + " (" +
                            std::strerror(errno) + ")");
  }
}

std::string format_double(double value) {
  char buf[40];
  // Shortest representation (from %.6g up) that parses back exactly.
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) {
      return buf;
    }
  }
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace detail

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  fail(SEPKIT_ERR_PARSE,
       path + ":" + std::to_string(line_no) + ": " + what);
}

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  // Subnormal underflow sets ERANGE but the value is still usable;
  // overflow comes back as +-inf and fails the finite check.
  return end != begin && *end == '\0' && std::isfinite(out);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) {
    out.push_back(cell);
  }
  return out;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct RawRows {
  std::vector<std::vector<double>> features;
  std::vector<double> labels;
};

/// {-1,+1} kept as is; files labeled {0,1} remapped. Anything else fails.
std::vector<int> normalize_labels(const RawRows& rows,
                                  const std::string& path) {
  bool saw_zero = false;
  bool saw_minus = false;
  for (double y : rows.labels) {
    if (y == 0.0) {
      saw_zero = true;
    } else if (y == -1.0) {
      saw_minus = true;
    } else if (y != 1.0) {
      fail(SEPKIT_ERR_PARSE, path + ": unknown label " +
                                 detail::format_double(y) +
                                 " (expected -1/+1 or 0/1)");
    }
  }
  if (saw_zero && saw_minus) {
    fail(SEPKIT_ERR_PARSE,
         path + ": labels mix 0/1 and -1/+1 conventions");
  }
  if (saw_zero) {
    std::cerr << "sepkit: " << path << ": labels 0/1 mapped to -1/+1\n";
  }
  std::vector<int> labels;
  labels.reserve(rows.labels.size());
  for (double y : rows.labels) {
    labels.push_back(y == 1.0 ? 1 : -1);
  }
  return labels;
}

Dataset finish_load(RawRows rows, std::size_t dim, const std::string& path) {
  if (rows.labels.empty()) {
    fail(SEPKIT_ERR_PARSE, path + ": no samples");
  }
  std::vector<int> labels = normalize_labels(rows, path);
  std::vector<double> features;
  features.reserve(rows.labels.size() * dim);
  for (auto& row : rows.features) {
    row.resize(dim, 0.0);  // pad sparse rows
    features.insert(features.end(), row.begin(), row.end());
  }
  return Dataset(std::move(features), std::move(labels), dim);
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(SEPKIT_ERR_IO, "cannot open: " + path);
  }
  RawRows rows;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line, ',');
    double label = 0.0;
    if (!parse_double(strip(cells[0]), label)) {
      if (line_no == 1) continue;  // header row
      parse_fail(path, line_no, "label is not numeric: '" + cells[0] + "'");
    }
    if (cells.size() < 2) {
      parse_fail(path, line_no, "row has no features");
    }
    std::vector<double> row;
    row.reserve(cells.size() - 1);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      double v = 0.0;
      if (!parse_double(strip(cells[c]), v)) {
        parse_fail(path, line_no,
                   "feature column " + std::to_string(c) +
                       " is not a finite number: '" + cells[c] + "'");
      }
      row.push_back(v);
    }
    if (dim == 0) {
      dim = row.size();
    } else if (row.size() != dim) {
      parse_fail(path, line_no,
                 "inconsistent dimension: expected " + std::to_string(dim) +
                     " features, got " + std::to_string(row.size()));
    }
    rows.features.push_back(std::move(row));
    rows.labels.push_back(label);
  }
  return finish_load(std::move(rows), dim, path);
}

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(SEPKIT_ERR_IO, "cannot open: " + path);
  }
  RawRows rows;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    std::istringstream ls(strip(line));
    std::string token;
    if (!(ls >> token)) continue;
    double label = 0.0;
    if (!parse_double(token, label)) {
      parse_fail(path, line_no, "label is not numeric: '" + token + "'");
    }
    std::vector<double> row;
    while (ls >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        parse_fail(path, line_no, "expected index:value, got '" + token + "'");
      }
      char* end = nullptr;
      const long idx = std::strtol(token.c_str(), &end, 10);
      if (end != token.c_str() + colon || idx < 1) {
        parse_fail(path, line_no, "bad feature index in '" + token + "'");
      }
      double value = 0.0;
      if (!parse_double(token.substr(colon + 1), value)) {
        parse_fail(path, line_no, "bad feature value in '" + token + "'");
      }
      const std::size_t k = static_cast<std::size_t>(idx);
      if (row.size() < k) row.resize(k, 0.0);
      row[k - 1] = value;
      dim = std::max(dim, k);
    }
    rows.features.push_back(std::move(row));
    rows.labels.push_back(label);
  }
  if (dim == 0 && !rows.labels.empty()) {
    fail(SEPKIT_ERR_PARSE, path + ": no feature entries in file");
  }
  return finish_load(std::move(rows), dim, path);
}

}  // namespace

Dataset load_dataset(const std::string& path, FileFormat format) {
  return format == FileFormat::csv ? load_csv(path) : load_libsvm(path);
}

void save_dataset(const Dataset& data, const std::string& path,
                  FileFormat format) {
  std::ostringstream out;
  if (format == FileFormat::csv) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      out << data.label(i);
      for (double x : data.feature(i)) {
        out << ',' << detail::format_double(x);
      }
      out << '\n';
    }
  } else {
    for (std::size_t i = 0; i < data.size(); ++i) {
      out << (data.label(i) > 0 ? "+1" : "-1");
      const auto f = data.feature(i);
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] != 0.0) {
          out << ' ' << k + 1 << ':' << detail::format_double(f[k]);
        }
      }
      out << '\n';
    }
  }
  detail::write_file_atomic(path, out.str());
}

}  // namespace sepkit
