#pragma once

#include "cdd/logic/formula.hpp"
#include "cdd/logic/satisfaction.hpp"
#include "cdd/logic/signature.hpp"
#include "cdd/logic/structure.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace cdd::logic {

struct EnumerationOptions {
  std::size_t max_domain_size = 4;
  std::uint64_t max_structures = std::uint64_t{1} << 24;
};

// Canonical domain {0, 1, ..., n-1} as rationals.
std::vector<Element> canonical_domain(std::size_t n);

// Number of structures over a domain of size n; throws CapExceeded when the
// count exceeds options.max_structures or n exceeds max_domain_size.
std::uint64_t structure_count(const Signature& sig, std::size_t n, const EnumerationOptions& options = {});

// Visits every structure in canonical order: a mixed-radix counter over the
// signature's symbols (predicates first, in declaration order, the first
// symbol most significant). A predicate's digit is the bitmask of its tuples,
// bit t standing for the t-th tuple in row-major order; a function's digit
// is its table read as a base-n numeral.
void for_each_structure(const Signature& sig, std::size_t n,
                        const std::function<void(const RelationalStructure&)>& visit,
                        const EnumerationOptions& options = {});

// All structures over the canonical domain that satisfy the sentence, in the
// canonical order above. Function symbols of arity > 2 are rejected.
std::vector<RelationalStructure> enumerate_models(const Signature& sig, const Formula& sentence,
                                                  std::size_t domain_size,
                                                  const EnumerationOptions& options = {});

}  // namespace cdd::logic
