#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dlq {

// An absolute IRI naming a concept, role or object.
class Iri {
 public:
  // Throws std::invalid_argument when the value is empty or contains
  // whitespace or angle brackets.
  explicit Iri(std::string value);

  const std::string& str() const { return value_; }

  friend bool operator==(const Iri&, const Iri&) = default;
  friend std::strong_ordering operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string value_;
};

// True for characters allowed in the local part of a prefixed name.
bool is_local_name_char(char c);

// Alias -> namespace table used to expand and compact prefixed names.
class PrefixTable {
 public:
  // Throws std::invalid_argument on a duplicate alias.
  void add(std::string alias, std::string expansion);

  std::optional<std::string> lookup(std::string_view alias) const;
  bool contains(std::string_view alias) const { return lookup(alias).has_value(); }

  // Renders `iri` as `alias:local` using the longest matching expansion,
  // falling back to `<iri>`.
  std::string compact(const Iri& iri) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  friend bool operator==(const PrefixTable&, const PrefixTable&) = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace dlq
