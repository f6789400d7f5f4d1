#include "mend/suggest/suggest.hpp"

namespace mend::suggest {

void Registry::register_suggester(std::shared_ptr<const Suggester> s) {
  for (const auto& existing : suggesters_) {
    if (existing->id() == s->id()) throw DuplicateId("suggester '" + s->id() + "' is already registered");
  }
  suggesters_.push_back(std::move(s));
}

std::vector<CatalogEntry> Registry::catalog() const {
  std::vector<CatalogEntry> out;
  for (const auto& s : suggesters_) out.push_back({s->id(), s->tier(), s->summary(), true});
  out.push_back({"search", 0.6, "search-based repair from similar code elsewhere (not implemented)", false});
  out.push_back({"learned", 0.5, "learned sequence-to-sequence repair model (not implemented)", false});
  return out;
}

Registry Registry::with_builtins() {
  Registry r;
  r.register_suggester(make_smell());
  r.register_suggester(make_guard());
  r.register_suggester(make_relop());
  r.register_suggester(make_argswap());
  r.register_suggester(make_loopidx());
  r.register_suggester(make_varsub());
  r.register_suggester(make_arith());
  return r;
}

}  // namespace mend::suggest
