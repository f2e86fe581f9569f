#pragma once
#include <stdexcept>
#include <string>

namespace ktm {

// Caller broke a precondition: wrong shape, out-of-range argument, use after done.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class IoErrc {
  open_failed,
  bad_magic,
  bad_version,
  bad_fingerprint,
  bad_role,
  truncated,
  parse,
  range,
};

class IoError : public std::runtime_error {
 public:
  IoError(IoErrc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  IoErrc kind() const { return kind_; }

 private:
  IoErrc kind_;
};

[[noreturn]] inline void contract_fail(const std::string& msg) { throw ContractError(msg); }

#define KTM_REQUIRE(cond, msg)                \
  do {                                        \
    if (!(cond)) ::ktm::contract_fail(msg);   \
  } while (0)

}  // namespace ktm
