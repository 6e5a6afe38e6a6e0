#include "bgd/report.hpp"

namespace bgd {

bool Report::passed() const { return first_failure() == nullptr; }

const AxiomCheck* Report::first_failure() const {
  for (const auto& c : checks_)
    if (!c.passed) return &c;
  return nullptr;
}

const AxiomCheck* Report::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (auto c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

void require(const Report& report, const std::string& context) {
  if (const auto* f = report.first_failure())
    throw VerificationError(context + ": axiom '" + f->name + "' failed", report);
}

std::function<std::vector<Index>(Index)> tuple_decoder(std::vector<Index> dims) {
  return [dims = std::move(dims)](Index j) {
    std::vector<Index> out(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      out[k] = dims[k] == 0 ? 0 : j % dims[k];
      j = dims[k] == 0 ? 0 : j / dims[k];
    }
    return out;
  };
}

}  // namespace bgd
