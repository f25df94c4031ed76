#include "contractcase/model.hpp"

#include "contractcase/error.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <memory>

namespace contractcase {
namespace {

// Length-prefixed fields so that ("ab","c") and ("a","bc") never collide.
class Canon {
public:
    Canon& field(std::string_view s) {
        buf_ += std::to_string(s.size());
        buf_ += ':';
        buf_ += s;
        buf_ += ';';
        return *this;
    }

    Canon& spec(const Specification& s) {
        return field("spec").field(s.id).field(to_string(s.kind)).field(s.text);
    }

    std::string digest() const {
        std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                    &EVP_MD_CTX_free);
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
            EVP_DigestUpdate(ctx.get(), buf_.data(), buf_.size()) != 1 ||
            EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
            throw Error("SHA-256 digest failed");
        static constexpr char hex[] = "0123456789abcdef";
        std::string out;
        out.reserve(len * 2);
        for (unsigned int i = 0; i < len; ++i) {
            out += hex[md[i] >> 4];
            out += hex[md[i] & 0x0f];
        }
        return out;
    }

private:
    std::string buf_;
};

const Specification& resolve(const SpecificationStructure& s, const Identifier& id,
                             const std::string& site) {
    const auto* spec = s.find_spec(id);
    if (!spec) throw ReferenceError(id, site);
    return *spec;
}

} // namespace

std::string combined_hash(const std::vector<std::string>& fields) {
    Canon c;
    for (const auto& f : fields) c.field(f);
    return c.digest();
}

std::string content_hash(const Specification& spec) {
    return Canon{}.spec(spec).digest();
}

std::string content_hash(const Contract& contract) {
    Canon c;
    c.field("contract").field(contract.id).field(contract.component);
    c.field(std::to_string(contract.assumptions.size()));
    for (const auto& a : contract.assumptions) c.spec(a);
    c.spec(contract.guarantee);
    return c.digest();
}

std::string content_hash(const SpecificationStructure& structure,
                         const Refinement& refinement) {
    Canon c;
    c.field("refinement").field(refinement.id);
    c.spec(resolve(structure, refinement.source, "source of refinement " + refinement.id));
    c.spec(resolve(structure, refinement.target, "target of refinement " + refinement.id));
    return c.digest();
}

std::string content_hash(const SpecificationStructure& structure,
                         const Component& component) {
    Canon c;
    c.field("component").field(component.id);
    c.field(component.parent ? "1" : "0").field(component.parent.value_or(""));
    c.field(component.name).field(component.description);
    std::vector<std::pair<Identifier, std::string>> contracts;
    for (const auto* k : structure.contracts_of(component.id))
        contracts.emplace_back(k->id, content_hash(*k));
    std::sort(contracts.begin(), contracts.end());
    c.field(std::to_string(contracts.size()));
    for (const auto& [id, h] : contracts) c.field(id).field(h);
    return c.digest();
}

} // namespace contractcase
