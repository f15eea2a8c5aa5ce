#include "dlq/interpretation.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "dlq/kb_text.hpp"

namespace dlq {

Element Interpretation::element_of(const Iri& object) const { return object_map.at(object); }

bool Interpretation::has_edge(const Role& r, Element from, Element to) const {
  auto it = role_ext.find(r.name());
  if (it == role_ext.end()) return false;
  auto edge = r.is_inverse() ? std::pair{to, from} : std::pair{from, to};
  return it->second.count(edge) > 0;
}

std::set<Element> extension(const Interpretation& i, const Concept& c) {
  using K = Concept::Kind;
  switch (c.kind()) {
    case K::Top:
      return i.domain;
    case K::Bottom:
      return {};
    case K::Atomic: {
      auto it = i.concept_ext.find(c.name());
      return it == i.concept_ext.end() ? std::set<Element>{} : it->second;
    }
    case K::Nominal: {
      auto it = i.object_map.find(c.name());
      return it == i.object_map.end() ? std::set<Element>{} : std::set<Element>{it->second};
    }
    case K::Not: {
      std::set<Element> inner = extension(i, c.operand()), out;
      std::set_difference(i.domain.begin(), i.domain.end(), inner.begin(), inner.end(),
                          std::inserter(out, out.end()));
      return out;
    }
    case K::And: {
      std::set<Element> a = extension(i, c.lhs()), b = extension(i, c.rhs()), out;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
      return out;
    }
    case K::Or: {
      std::set<Element> out = extension(i, c.lhs()), b = extension(i, c.rhs());
      out.insert(b.begin(), b.end());
      return out;
    }
    case K::Exists:
    case K::Forall: {
      std::set<Element> filler = extension(i, c.operand()), out;
      bool exists = c.is(K::Exists);
      for (Element d : i.domain) {
        bool any = false, all = true;
        for (Element e : i.domain) {
          if (!i.has_edge(c.role(), d, e)) continue;
          bool in = filler.count(e) > 0;
          any = any || in;
          all = all && in;
        }
        if (exists ? any : all) out.insert(d);
      }
      return out;
    }
  }
  return {};
}

namespace {

bool subset(const std::set<Element>& a, const std::set<Element>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool well_formed(const Interpretation& i, const KnowledgeBase& k) {
  for (const auto& [name, ext] : i.concept_ext)
    if (!subset(ext, i.domain)) return false;
  for (const auto& [name, ext] : i.role_ext)
    for (const auto& [a, b] : ext)
      if (!i.domain.count(a) || !i.domain.count(b)) return false;
  for (const auto& [obj, e] : i.object_map)
    if (!i.domain.count(e)) return false;
  for (const Iri& obj : signature(k).objects)
    if (!i.object_map.count(obj)) return false;
  return !i.domain.empty();
}

bool holds(const Interpretation& i, const Axiom& ax) {
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, SubClassOf>) {
          return subset(extension(i, a.sub), extension(i, a.super));
        } else if constexpr (std::is_same_v<T, EquivalentTo>) {
          return extension(i, a.lhs) == extension(i, a.rhs);
        } else if constexpr (std::is_same_v<T, ConceptAssertion>) {
          return extension(i, a.type).count(i.element_of(a.object)) > 0;
        } else {
          return i.has_edge(Role::named(a.role), i.element_of(a.subject), i.element_of(a.object));
        }
      },
      ax);
}

}  // namespace

bool verify_model(const Interpretation& i, const KnowledgeBase& k) {
  if (!well_formed(i, k)) return false;
  for (const auto& ax : k.tbox)
    if (!holds(i, ax)) return false;
  for (const auto& ax : k.abox)
    if (!holds(i, ax)) return false;
  return true;
}

std::string describe_model(const Interpretation& i, const PrefixTable& px) {
  std::ostringstream os;
  os << "domain: {";
  bool first = true;
  for (Element d : i.domain) {
    os << (first ? "" : ", ") << 'e' << d;
    first = false;
  }
  os << "}\n";
  for (const auto& [obj, e] : i.object_map) os << "  " << px.compact(obj) << " -> e" << e << '\n';
  for (const auto& [name, ext] : i.concept_ext) {
    if (ext.empty()) continue;
    os << "  " << px.compact(name) << ":";
    for (Element d : ext) os << " e" << d;
    os << '\n';
  }
  for (const auto& [name, ext] : i.role_ext) {
    if (ext.empty()) continue;
    os << "  " << px.compact(name) << ":";
    for (const auto& [a, b] : ext) os << " (e" << a << ",e" << b << ")";
    os << '\n';
  }
  return os.str();
}

}  // namespace dlq
