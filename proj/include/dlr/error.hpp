#pragma once

#include <stdexcept>
#include <string>

namespace dlr {

// Violated precondition of a public routine (wrong sizes, out-of-range ranks, ...).
class contract_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// The Poisson problem has no periodic solution for the given charge density.
class solvability_error : public std::runtime_error {
public:
  solvability_error(const std::string& msg, double mean_rho)
    : std::runtime_error(msg), mean_rho_(mean_rho) {}
  double mean_rho() const { return mean_rho_; }

private:
  double mean_rho_;
};

// Bad configuration value; key() names the offending field.
class config_error : public std::runtime_error {
public:
  config_error(std::string key, const std::string& msg)
    : std::runtime_error(key + ": " + msg), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

inline void require(bool cond, const std::string& msg) {
  if(!cond)
    throw contract_error(msg);
}

} // namespace dlr
