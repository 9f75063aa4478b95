#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hpart {

// Caller supplied something outside an operation's domain.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Enumeration would exceed the configured transversal cap.
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(std::uint64_t product, std::uint64_t cap)
        : std::runtime_error("transversal count " + std::to_string(product) + " exceeds cap " +
                             std::to_string(cap)),
          product_(product),
          cap_(cap) {}

    std::uint64_t product() const { return product_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t product_;
    std::uint64_t cap_;
};

}  // namespace hpart
