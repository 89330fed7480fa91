#ifndef GROWTHLAB_CSV_HPP
#define GROWTHLAB_CSV_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace growthlab {

/// Ratio formatting: decimal, 6 significant digits, locale-independent.
std::string fmt_ratio(double v);

/// CSV writer: '#' comment lines, then one header row, then data rows.
/// Integers decimal, UTF-8, comma separated.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& text);
  void header(const std::vector<std::string>& cols);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& os_;
};

}  // namespace growthlab

#endif
