#ifndef CPOSLM_ERRORS_HPP
#define CPOSLM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cposlm {

// Exit codes used by the CLI. Keep stable: scripts key off them.
enum class exit_code : int {
    ok = 0,
    failure = 1,
    configuration = 2,
    convergence = 3,
    sampling = 4,
    io = 5,
};

class error : public std::runtime_error {
public:
    error(exit_code code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    exit_code code() const noexcept { return code_; }

private:
    exit_code code_;
};

// Invalid parameter values, bad config keys, domain violations.
class config_error : public error {
public:
    explicit config_error(const std::string& what)
        : error(exit_code::configuration, what) {}
};

// Quadrature or iteration failed to converge within tolerance.
class convergence_error : public error {
public:
    explicit convergence_error(const std::string& what)
        : error(exit_code::convergence, what) {}
};

// Raster/grid resolution insufficient for the requested feature.
class sampling_error : public error {
public:
    explicit sampling_error(const std::string& what)
        : error(exit_code::sampling, what) {}
};

class io_error : public error {
public:
    explicit io_error(const std::string& what)
        : error(exit_code::io, what) {}
};

}  // namespace cposlm

#endif
