#pragma once

#include <stdexcept>
#include <string>

namespace majorana {

enum class errc {
  invalid_input,
  sampling_too_coarse,
  numeric_failure,
  degenerate_geometry,
  internal_consistency,
  size_cap,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_input: return "invalid_input";
    case errc::sampling_too_coarse: return "sampling_too_coarse";
    case errc::numeric_failure: return "numeric_failure";
    case errc::degenerate_geometry: return "degenerate_geometry";
    case errc::internal_consistency: return "internal_consistency";
    case errc::size_cap: return "size_cap";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace majorana
