#pragma once

#include <stdexcept>
#include <string>

namespace nwell {

// Bad input: out-of-domain arguments, invalid parameters, malformed config.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to converge or hit a regime it cannot handle.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg, double best_estimate = 0.0,
                             double achieved_tol = 0.0)
        : std::runtime_error(msg), best_estimate_(best_estimate), achieved_tol_(achieved_tol) {}

    double best_estimate() const { return best_estimate_; }
    double achieved_tolerance() const { return achieved_tol_; }

private:
    double best_estimate_;
    double achieved_tol_;
};

} // namespace nwell
