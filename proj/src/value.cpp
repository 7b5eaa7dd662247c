#include "itx/value.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "itx/enumeration.hpp"

namespace itx {

namespace {

constexpr unsigned char kTagUnit = 0x00;
constexpr unsigned char kTagNat = 0x01;
constexpr unsigned char kTagPair = 0x02;
constexpr unsigned char kTagLeft = 0x03;
constexpr unsigned char kTagRight = 0x04;
constexpr unsigned char kTagFn = 0x05;

void append_framed(Bytes& out, const Bytes& child) {
  append_uleb128(out, child.size());
  out += child;
}

Bytes read_framed(const Bytes& in, std::size_t& pos) {
  std::uint64_t len = read_uleb128(in, pos);
  if (pos + len > in.size()) throw ShapeError("truncated encoding frame");
  Bytes child = in.substr(pos, static_cast<std::size_t>(len));
  pos += static_cast<std::size_t>(len);
  return child;
}

}  // namespace

struct Value::Node {
  Kind kind;
  std::uint64_t nat = 0;
  std::shared_ptr<const Node> a;  // pair first / injection payload
  std::shared_ptr<const Node> b;  // pair second
  std::function<Value(const Value&)> apply;
  std::shared_ptr<const Enumeration> domain;
  // Explicit table backing (fn_table): canonical entries sorted by key bytes.
  std::shared_ptr<const std::vector<std::pair<Bytes, Value>>> table;
  std::shared_ptr<const std::any> payload;

  explicit Node(Kind k) : kind(k) {}
};

Value Value::unit() {
  static const std::shared_ptr<const Node> node =
      std::make_shared<Node>(Kind::Unit);
  return Value(node);
}

Value Value::nat(std::uint64_t n) {
  auto node = std::make_shared<Node>(Kind::Nat);
  node->nat = n;
  return Value(std::move(node));
}

Value Value::pair(Value first, Value second) {
  auto node = std::make_shared<Node>(Kind::Pair);
  node->a = std::move(first.node_);
  node->b = std::move(second.node_);
  return Value(std::move(node));
}

Value Value::left(Value inner) {
  auto node = std::make_shared<Node>(Kind::Left);
  node->a = std::move(inner.node_);
  return Value(std::move(node));
}

Value Value::right(Value inner) {
  auto node = std::make_shared<Node>(Kind::Right);
  node->a = std::move(inner.node_);
  return Value(std::move(node));
}

Value Value::fn(std::function<Value(const Value&)> apply, Enumeration domain) {
  auto node = std::make_shared<Node>(Kind::Fn);
  node->apply = std::move(apply);
  node->domain = std::make_shared<Enumeration>(std::move(domain));
  return Value(std::move(node));
}

Value Value::fn_table(std::vector<std::pair<Value, Value>> entries) {
  auto node = std::make_shared<Node>(Kind::Fn);
  auto table = std::make_shared<std::vector<std::pair<Bytes, Value>>>();
  std::vector<Value> keys;
  keys.reserve(entries.size());
  table->reserve(entries.size());
  for (auto& [k, v] : entries) {
    table->emplace_back(k.encode(), v);
    keys.push_back(k);
  }
  auto lookup = table;
  node->apply = [lookup](const Value& arg) -> Value {
    Bytes key = arg.encode();
    for (const auto& [k, v] : *lookup) {
      if (k == key) return v;
    }
    throw ShapeError("tabulated function applied outside its domain (" +
                     decode_text(key) + ")");
  };
  node->domain = std::make_shared<Enumeration>(Enumeration::of(std::move(keys)));
  node->table = std::move(table);
  return Value(std::move(node));
}

Value Value::box(std::any payload) {
  auto node = std::make_shared<Node>(Kind::Box);
  node->payload = std::make_shared<const std::any>(std::move(payload));
  return Value(std::move(node));
}

Value::Kind Value::kind() const { return node_->kind; }

std::uint64_t Value::as_nat() const {
  if (node_->kind != Kind::Nat) throw ShapeError("value is not a natural");
  return node_->nat;
}

Value Value::first() const {
  if (node_->kind != Kind::Pair) throw ShapeError("value is not a pair");
  return Value(node_->a);
}

Value Value::second() const {
  if (node_->kind != Kind::Pair) throw ShapeError("value is not a pair");
  return Value(node_->b);
}

Value Value::inner() const {
  if (node_->kind != Kind::Left && node_->kind != Kind::Right)
    throw ShapeError("value is not an injection");
  return Value(node_->a);
}

Value Value::apply(const Value& argument) const {
  if (node_->kind != Kind::Fn) throw ShapeError("value is not applicable");
  return node_->apply(argument);
}

const Enumeration& Value::domain() const {
  if (node_->kind != Kind::Fn) throw ShapeError("value is not applicable");
  return *node_->domain;
}

const std::any& Value::box_payload() const {
  if (node_->kind != Kind::Box) throw ShapeError("value is not a box");
  return *node_->payload;
}

Bytes Value::encode(const Budget& budget) const {
  switch (node_->kind) {
    case Kind::Unit:
      return Bytes(1, static_cast<char>(kTagUnit));
    case Kind::Nat: {
      Bytes out(1, static_cast<char>(kTagNat));
      append_uleb128(out, node_->nat);
      return out;
    }
    case Kind::Pair: {
      Bytes out(1, static_cast<char>(kTagPair));
      append_framed(out, first().encode(budget));
      append_framed(out, second().encode(budget));
      return out;
    }
    case Kind::Left: {
      Bytes out(1, static_cast<char>(kTagLeft));
      append_framed(out, inner().encode(budget));
      return out;
    }
    case Kind::Right: {
      Bytes out(1, static_cast<char>(kTagRight));
      append_framed(out, inner().encode(budget));
      return out;
    }
    case Kind::Fn: {
      std::vector<std::pair<Bytes, Bytes>> entries;
      if (node_->table != nullptr) {
        entries.reserve(node_->table->size());
        for (const auto& [k, v] : *node_->table)
          entries.emplace_back(k, v.encode(budget));
      } else {
        if (!node_->domain->available())
          throw UnavailableError("function value has no enumerable domain: " +
                                 node_->domain->note());
        std::vector<Value> keys = node_->domain->exhaust(budget.per_axis);
        entries.reserve(keys.size());
        for (const Value& k : keys)
          entries.emplace_back(k.encode(budget), node_->apply(k).encode(budget));
      }
      std::sort(entries.begin(), entries.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      Bytes out(1, static_cast<char>(kTagFn));
      append_uleb128(out, entries.size());
      for (const auto& [k, v] : entries) {
        append_framed(out, k);
        append_framed(out, v);
      }
      return out;
    }
    case Kind::Box:
      throw UnavailableError("opaque box has no canonical encoding");
  }
  throw ShapeError("corrupt value node");
}

bool Value::equals(const Value& other, const Budget& budget) const {
  return encode(budget) == other.encode(budget);
}

bool same_node(const Value& a, const Value& b) { return a.node_ == b.node_; }

bool approx_equal(const Value& a, const Value& b, const Budget& budget,
                  std::vector<std::string>* notes) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::Unit:
      return true;
    case Value::Kind::Nat:
      return a.as_nat() == b.as_nat();
    case Value::Kind::Pair:
      return approx_equal(a.first(), b.first(), budget, notes) &&
             approx_equal(a.second(), b.second(), budget, notes);
    case Value::Kind::Left:
    case Value::Kind::Right:
      return approx_equal(a.inner(), b.inner(), budget, notes);
    case Value::Kind::Fn: {
      const Enumeration* dom = nullptr;
      if (a.domain().available()) {
        dom = &a.domain();
      } else if (b.domain().available()) {
        dom = &b.domain();
      } else {
        throw UnavailableError(
            "cannot compare function values: neither domain is enumerable (" +
            a.domain().note() + ")");
      }
      for (std::size_t k = 0; k < budget.per_axis; ++k) {
        std::optional<Value> key = dom->nth(k);
        if (!key.has_value()) return true;  // domain exhausted: full agreement
        if (!approx_equal(a.apply(*key), b.apply(*key), budget, notes))
          return false;
      }
      if (dom->nth(budget.per_axis).has_value() && notes != nullptr) {
        notes->push_back("function comparison bounded at " +
                         std::to_string(budget.per_axis) +
                         " domain elements (axis not exhausted)");
      }
      return true;
    }
    case Value::Kind::Box:
      throw UnavailableError("opaque boxes cannot be compared");
  }
  throw ShapeError("corrupt value node");
}

void append_uleb128(Bytes& out, std::uint64_t n) {
  do {
    unsigned char byte = static_cast<unsigned char>(n & 0x7f);
    n >>= 7;
    if (n != 0) byte |= 0x80;
    out.push_back(static_cast<char>(byte));
  } while (n != 0);
}

std::uint64_t read_uleb128(const Bytes& in, std::size_t& pos) {
  std::uint64_t result = 0;
  unsigned shift = 0;
  while (true) {
    if (pos >= in.size()) throw ShapeError("truncated LEB128");
    unsigned char byte = static_cast<unsigned char>(in[pos++]);
    result |= static_cast<std::uint64_t>(byte & 0x7f) << shift;
    if ((byte & 0x80) == 0) break;
    shift += 7;
    if (shift >= 64) throw ShapeError("LEB128 overflow");
  }
  return result;
}

std::string to_hex(const Bytes& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0x0f]);
  }
  return out;
}

Bytes from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw ShapeError("odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ShapeError("invalid hex digit");
  };
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t k = 0; k < hex.size(); k += 2)
    out.push_back(static_cast<char>((nibble(hex[k]) << 4) | nibble(hex[k + 1])));
  return out;
}

namespace {

std::string decode_at(const Bytes& enc, std::size_t& pos) {
  if (pos >= enc.size()) throw ShapeError("truncated encoding");
  unsigned char tag = static_cast<unsigned char>(enc[pos++]);
  switch (tag) {
    case kTagUnit:
      return "*";
    case kTagNat:
      return std::to_string(read_uleb128(enc, pos));
    case kTagPair: {
      Bytes a = read_framed(enc, pos);
      Bytes b = read_framed(enc, pos);
      return "(" + decode_text(a) + ", " + decode_text(b) + ")";
    }
    case kTagLeft:
      return "L " + decode_text(read_framed(enc, pos));
    case kTagRight:
      return "R " + decode_text(read_framed(enc, pos));
    case kTagFn: {
      std::uint64_t count = read_uleb128(enc, pos);
      std::string out = "{";
      for (std::uint64_t k = 0; k < count; ++k) {
        if (k != 0) out += ", ";
        Bytes key = read_framed(enc, pos);
        Bytes val = read_framed(enc, pos);
        out += decode_text(key) + ": " + decode_text(val);
      }
      return out + "}";
    }
    default:
      throw ShapeError("unknown encoding tag");
  }
}

}  // namespace

std::string decode_text(const Bytes& encoding) {
  std::size_t pos = 0;
  std::string out = decode_at(encoding, pos);
  if (pos != encoding.size()) throw ShapeError("trailing bytes in encoding");
  return out;
}

}  // namespace itx
