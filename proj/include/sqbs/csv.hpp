#pragma once

#include <ostream>
#include <string>
#include <type_traits>

namespace sqbs {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Fixed 15-significant-digit formatting so identical inputs produce
/// byte-identical files.
std::string format_g15(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(const std::string& text);

  template <typename... Ts>
  void row(const Ts&... fields) {
    bool first = true;
    ((write_field(fields, first), first = false), ...);
    os_ << '\n';
  }

 private:
  template <typename T>
  void write_field(const T& v, bool first) {
    if (!first) os_ << ',';
    if constexpr (std::is_floating_point_v<T>) {
      os_ << format_g15(v);
    } else {
      os_ << v;
    }
  }

  std::ostream& os_;
};

}  // namespace sqbs
