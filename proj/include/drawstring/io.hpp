#pragma once

#include <string>
#include <vector>

namespace drawstring {

// shortest decimal that still round-trips a double exactly would do, but the
// file contracts pin 17 significant digits
std::string fmt17(double v);

void ensure_parent_dir(const std::string& path);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);
  ~CsvWriter();

 private:
  struct Impl;
  Impl* impl_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace drawstring
