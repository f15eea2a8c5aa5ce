#include "dlq/iri.hpp"

#include <cctype>
#include <stdexcept>

namespace dlq {

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw std::invalid_argument("IRI must not be empty");
  for (char c : value_) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '<' || c == '>')
      throw std::invalid_argument("IRI contains an illegal character: " + value_);
  }
}

bool is_local_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

void PrefixTable::add(std::string alias, std::string expansion) {
  if (contains(alias)) throw std::invalid_argument("duplicate prefix alias '" + alias + ":'");
  entries_.emplace_back(std::move(alias), std::move(expansion));
}

std::optional<std::string> PrefixTable::lookup(std::string_view alias) const {
  for (const auto& [a, e] : entries_)
    if (a == alias) return e;
  return std::nullopt;
}

std::string PrefixTable::compact(const Iri& iri) const {
  const std::string& s = iri.str();
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : entries_) {
    const std::string& ns = entry.second;
    if (ns.size() >= s.size() || s.compare(0, ns.size(), ns) != 0) continue;
    bool local_ok = true;
    for (std::size_t i = ns.size(); i < s.size(); ++i) local_ok = local_ok && is_local_name_char(s[i]);
    if (!local_ok) continue;
    if (best == nullptr || ns.size() > best->second.size()) best = &entry;
  }
  if (best == nullptr) return "<" + s + ">";
  return best->first + ":" + s.substr(best->second.size());
}

}  // namespace dlq
