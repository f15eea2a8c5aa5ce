#include "dlq/lang/ast.hpp"

#include <stdexcept>

#include <json.hpp>

#include "dlq/kb_text.hpp"

namespace dlq::lang {

LangType LangType::of(Concept c) { return LangType{Kind::Concept, std::move(c), {}}; }
LangType LangType::list(LangType elem) { return LangType{Kind::List, std::nullopt, {std::move(elem)}}; }
LangType LangType::boolean() { return LangType{Kind::Bool, std::nullopt, {}}; }

LangType LangType::tuple(std::vector<LangType> elems) {
  if (elems.size() < 2) throw std::invalid_argument("tuple types need at least two components");
  return LangType{Kind::Tuple, std::nullopt, std::move(elems)};
}

const Concept& LangType::concept_of() const {
  if (!concept_type) throw std::logic_error("not a concept type");
  return *concept_type;
}

const LangType& LangType::elem() const {
  if (kind != Kind::List) throw std::logic_error("not a list type");
  return elems.front();
}

std::string print_type(const LangType& t, const PrefixTable& prefixes) {
  switch (t.kind) {
    case LangType::Kind::Concept:
      return "`" + print_concept(t.concept_of(), prefixes) + "`";
    case LangType::Kind::List:
      return "List[" + print_type(t.elem(), prefixes) + "]";
    case LangType::Kind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < t.elems.size(); ++i) out += (i ? ", " : "") + print_type(t.elems[i], prefixes);
      return out + ")";
    }
    case LangType::Kind::Bool:
      return "Bool";
  }
  return {};
}

const Definition* Program::find(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

Value Value::of(Iri i) { return Value{Kind::Iri, std::move(i), false, {}}; }
Value Value::of(bool b) { return Value{Kind::Bool, std::nullopt, b, {}}; }
Value Value::list(std::vector<Value> items) { return Value{Kind::List, std::nullopt, false, std::move(items)}; }
Value Value::tuple(std::vector<Value> items) { return Value{Kind::Tuple, std::nullopt, false, std::move(items)}; }

std::string print_value(const Value& v, const PrefixTable& prefixes) {
  switch (v.kind) {
    case Value::Kind::Iri:
      return prefixes.compact(*v.iri);
    case Value::Kind::Bool:
      return v.boolean ? "true" : "false";
    case Value::Kind::List:
    case Value::Kind::Tuple: {
      bool list = v.kind == Value::Kind::List;
      std::string out = list ? "[" : "(";
      for (std::size_t i = 0; i < v.items.size(); ++i) out += (i ? ", " : "") + print_value(v.items[i], prefixes);
      return out + (list ? "]" : ")");
    }
  }
  return {};
}

namespace {

nlohmann::ordered_json to_json(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Iri:
      return v.iri->str();
    case Value::Kind::Bool:
      return v.boolean;
    default: {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& item : v.items) arr.push_back(to_json(item));
      return arr;
    }
  }
}

}  // namespace

std::string value_to_json(const Value& v) { return to_json(v).dump(); }

}  // namespace dlq::lang
