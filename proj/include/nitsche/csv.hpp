#ifndef NITSCHE_CSV_HPP
#define NITSCHE_CSV_HPP

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "nitsche/atomic_file.hpp"

namespace nitsche {

/// Header row plus numeric rows, '.' decimal point, 17 significant digits.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
    out_.imbue(std::locale::classic());
    out_ << std::setprecision(17);
    for (std::size_t i = 0; i < header_.size(); ++i) out_ << (i ? "," : "") << header_[i];
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    if (values.size() != header_.size()) throw Error("CsvTable: row width does not match header");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << '\n';
    ++rows_;
  }

  std::size_t rows() const { return rows_; }
  std::string str() const { return out_.str(); }
  void save(const std::string& path) const { write_file_atomic(path, str()); }

 private:
  std::vector<std::string> header_;
  std::ostringstream out_;
  std::size_t rows_ = 0;
};

}  // namespace nitsche

#endif
