#include "cdd/logic/enumerate.hpp"

#include "cdd/error.hpp"

namespace cdd::logic {

namespace {

struct Digit {
  bool is_predicate;
  std::string name;
  std::size_t arity;
  std::uint64_t tuples;  // n^arity
  std::uint64_t radix;   // 2^tuples or n^tuples
};

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > cap / base) return cap + 1;
    acc *= base;
  }
  return acc;
}

std::vector<Digit> digits_for(const Signature& sig, std::size_t n, const EnumerationOptions& options) {
  if (n > options.max_domain_size)
    throw Error(Errc::CapExceeded, "domain size " + std::to_string(n) + " exceeds cap " +
                                       std::to_string(options.max_domain_size));
  std::vector<Digit> digits;
  const auto cap = options.max_structures;
  for (const auto& p : sig.predicates()) {
    auto tuples = checked_pow(n, p.arity, cap);
    digits.push_back({true, p.name, p.arity, tuples, checked_pow(2, tuples, cap)});
  }
  for (const auto& f : sig.functions()) {
    if (f.arity > 2)
      throw Error(Errc::Unsupported, "function '" + f.name + "' has arity > 2; enumeration not supported");
    auto tuples = checked_pow(n, f.arity, cap);
    digits.push_back({false, f.name, f.arity, tuples, checked_pow(n, tuples, cap)});
  }
  return digits;
}

Tuple tuple_at(std::uint64_t index, std::size_t arity, const std::vector<Element>& domain) {
  Tuple t(arity);
  const std::uint64_t n = domain.size();
  for (std::size_t k = arity; k-- > 0;) {
    t[k] = domain[index % n];
    index /= n;
  }
  return t;
}

}  // namespace

std::vector<Element> canonical_domain(std::size_t n) {
  std::vector<Element> d;
  for (std::size_t i = 0; i < n; ++i) d.emplace_back(static_cast<std::int64_t>(i));
  return d;
}

std::uint64_t structure_count(const Signature& sig, std::size_t n, const EnumerationOptions& options) {
  const auto cap = options.max_structures;
  std::uint64_t total = 1;
  for (const auto& d : digits_for(sig, n, options)) {
    if (d.radix == 0) return 0;
    if (d.radix > cap || total > cap / d.radix)
      throw Error(Errc::CapExceeded, "more than " + std::to_string(cap) + " structures");
    total *= d.radix;
  }
  return total;
}

void for_each_structure(const Signature& sig, std::size_t n,
                        const std::function<void(const RelationalStructure&)>& visit,
                        const EnumerationOptions& options) {
  const auto digits = digits_for(sig, n, options);
  const std::uint64_t total = structure_count(sig, n, options);
  const auto domain = canonical_domain(n);

  for (std::uint64_t index = 0; index < total; ++index) {
    RelationalStructure s;
    s.domain = domain;
    std::uint64_t rest = index;
    for (std::size_t k = digits.size(); k-- > 0;) {
      const auto& d = digits[k];
      std::uint64_t value = rest % d.radix;
      rest /= d.radix;
      if (d.is_predicate) {
        Relation r{d.arity, {}};
        for (std::uint64_t t = 0; t < d.tuples; ++t)
          if (value >> t & 1U) r.tuples.insert(tuple_at(t, d.arity, domain));
        s.relations.emplace(d.name, std::move(r));
      } else {
        FunctionTable table{d.arity, {}};
        // Most significant base-n digit belongs to the first tuple.
        std::vector<std::uint64_t> entries(d.tuples);
        for (std::uint64_t t = d.tuples; t-- > 0;) {
          entries[t] = value % n;
          value /= n;
        }
        for (std::uint64_t t = 0; t < d.tuples; ++t)
          table.entries.emplace(tuple_at(t, d.arity, domain), domain[entries[t]]);
        s.functions.emplace(d.name, std::move(table));
      }
    }
    visit(s);
  }
}

std::vector<RelationalStructure> enumerate_models(const Signature& sig, const Formula& sentence,
                                                  std::size_t domain_size, const EnumerationOptions& options) {
  check_well_formed(sentence, sig);
  if (!is_sentence(sentence)) throw Error(Errc::FreeVariable, "enumerate_models requires a sentence");
  std::vector<RelationalStructure> models;
  const Interpretation identity;
  for_each_structure(
      sig, domain_size,
      [&](const RelationalStructure& s) {
        if (satisfies(s, sentence, identity)) models.push_back(s);
      },
      options);
  return models;
}

}  // namespace cdd::logic
