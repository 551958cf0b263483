#ifndef VIR_ERROR_HPP
#define VIR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace vir {

// Base for all reported errors; `kind` is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

struct ArithError : Error {
    explicit ArithError(const std::string& msg) : Error("arith", msg) {}
};

struct RingError : Error {
    explicit RingError(const std::string& msg) : Error("ring", msg) {}
};

struct BoundsError : Error {
    explicit BoundsError(const std::string& msg) : Error("bounds", msg) {}
};

struct ResourceError : Error {
    explicit ResourceError(const std::string& msg) : Error("resource", msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("domain", msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error("parse", msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

} // namespace vir

#endif
