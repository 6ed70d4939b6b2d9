#include "sqbs/csv.hpp"

#include <cstdio>

namespace sqbs {

std::string format_g15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return buf;
}

void CsvWriter::comment(const std::string& text) {
  os_ << "# " << text << '\n';
}

}  // namespace sqbs
