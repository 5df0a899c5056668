#include "drawstring/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace drawstring {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_parent_dir(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path() && !p.parent_path().empty())
    std::filesystem::create_directories(p.parent_path());
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : impl_(new Impl) {
  ensure_parent_dir(path);
  impl_->out.open(path, std::ios::binary);  // LF line endings everywhere
  if (!impl_->out) throw std::runtime_error("cannot open " + path);
  for (size_t i = 0; i < header.size(); ++i)
    impl_->out << (i ? "," : "") << header[i];
  impl_->out << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i)
    impl_->out << (i ? "," : "") << fmt17(values[i]);
  impl_->out << "\n";
}

void CsvWriter::raw_row(const std::string& line) { impl_->out << line << "\n"; }

CsvWriter::~CsvWriter() { delete impl_; }

void write_text_file(const std::string& path, const std::string& content) {
  ensure_parent_dir(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace drawstring
