#pragma once

#include <stdexcept>
#include <string>

namespace contractcase {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unresolved identifier, or an identifier that resolves ambiguously.
class ReferenceError : public Error {
public:
    ReferenceError(std::string id, std::string site)
        : Error("unresolved identifier '" + id + "' in " + site),
          id_(std::move(id)), site_(std::move(site)) {}
    ReferenceError(std::string id, std::string site, const std::string& message)
        : Error(message), id_(std::move(id)), site_(std::move(site)) {}

    const std::string& id() const noexcept { return id_; }
    const std::string& site() const noexcept { return site_; }

private:
    std::string id_;
    std::string site_;
};

// Malformed or incompatible JSON document.
class SchemaError : public Error {
public:
    using Error::Error;
};

// An edit to an assurance case that would break one of its invariants.
class CaseError : public Error {
public:
    using Error::Error;
};

// A library record whose content does not match the module it is keyed by.
class LibraryCorruptionError : public Error {
public:
    using Error::Error;
};

} // namespace contractcase
