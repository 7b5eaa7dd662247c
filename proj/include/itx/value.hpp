#ifndef ITX_VALUE_HPP
#define ITX_VALUE_HPP

#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace itx {

class Enumeration;

/// Raw byte string used for canonical encodings.
using Bytes = std::string;

/// Base error for everything this library can raise.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration (or encoding) that does not exist at all — e.g. a function
/// space over a non-enumerable domain.
struct UnavailableError : Error {
  using Error::Error;
};

/// A finite bound was exceeded while tabulating something that must be
/// materialised exactly (never raised by bounded observations).
struct BudgetError : Error {
  using Error::Error;
};

/// A value had the wrong shape for the requested operation.
struct ShapeError : Error {
  using Error::Error;
};

/// Per-axis bound used whenever an enumeration has to be materialised
/// (function tabulation, response fan-out, extensional comparison).
struct Budget {
  std::size_t per_axis = 64;
};

inline constexpr std::size_t kDefaultBudget = 64;

/// Immutable first-order data with a canonical byte encoding.
///
/// Kinds: unit, naturals, pairs, tagged injections, applicable functions and
/// opaque boxes. Function values carry a closure plus (optionally) a domain
/// enumeration; their encoding is the full tabulation over that domain, which
/// throws rather than truncating when the domain cannot be exhausted within
/// the budget. Boxes carry host objects (used for machine seeds) and have no
/// encoding. Equality of encodable values is byte equality of encodings.
class Value {
 public:
  enum class Kind { Unit, Nat, Pair, Left, Right, Fn, Box };

  Value() : Value(unit()) {}

  static Value unit();
  static Value nat(std::uint64_t n);
  static Value pair(Value first, Value second);
  static Value left(Value inner);
  static Value right(Value inner);

  /// A function value backed by a closure. `domain` may be an unavailable
  /// enumeration, in which case the value cannot be encoded or enumerated
  /// against, but can still be applied.
  static Value fn(std::function<Value(const Value&)> apply, Enumeration domain);

  /// A function value backed by an explicit table. The domain is exactly the
  /// listed keys (in the given order); applying to anything else throws.
  static Value fn_table(std::vector<std::pair<Value, Value>> entries);

  /// An opaque host payload (drives machine seeds). Not encodable.
  static Value box(std::any payload);
  template <typename T>
  static Value boxed(T v) {
    return box(std::any(std::move(v)));
  }

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }

  std::uint64_t as_nat() const;
  Value first() const;   ///< pair component
  Value second() const;  ///< pair component
  Value inner() const;   ///< left/right payload

  /// Applies a function value. Throws ShapeError on non-functions.
  Value apply(const Value& argument) const;

  /// Domain enumeration of a function value (may be unavailable).
  const Enumeration& domain() const;

  template <typename T>
  const T& unbox() const {
    const std::any& a = box_payload();
    const T* p = std::any_cast<T>(&a);
    if (p == nullptr) throw ShapeError("box holds a different payload type");
    return *p;
  }

  /// Canonical encoding. Function values tabulate over their domain (throws
  /// UnavailableError / BudgetError when that is impossible within budget);
  /// boxes always throw UnavailableError.
  Bytes encode(const Budget& budget = Budget()) const;

  /// Bytewise equality of canonical encodings; throws where encode() throws.
  bool equals(const Value& other, const Budget& budget = Budget()) const;

 private:
  struct Node;
  explicit Value(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  const std::any& box_payload() const;
  std::shared_ptr<const Node> node_;

  friend bool same_node(const Value& a, const Value& b);
};

/// Pointer identity (used as a memoisation fallback for unencodable values).
bool same_node(const Value& a, const Value& b);

/// Bounded structural comparison: data compared exactly, function values
/// compared extensionally over the first `budget.per_axis` domain elements.
/// When a domain does not end within the budget, a note is appended to
/// `notes` (when given) and the verdict is the prefix verdict. Unavailable
/// domains on both sides throw UnavailableError.
bool approx_equal(const Value& a, const Value& b, const Budget& budget,
                  std::vector<std::string>* notes = nullptr);

/// LEB128 helpers for the canonical encoding.
void append_uleb128(Bytes& out, std::uint64_t n);
std::uint64_t read_uleb128(const Bytes& in, std::size_t& pos);

/// Lowercase hex of a byte string (JSON forms carry encodings as hex).
std::string to_hex(const Bytes& bytes);
Bytes from_hex(const std::string& hex);

/// Renders an encoding as human-readable text: unit "*", nats in decimal,
/// pairs "(a, b)", injections "L x"/"R x", tabulations "{k: v, ...}".
std::string decode_text(const Bytes& encoding);

}  // namespace itx

#endif  // ITX_VALUE_HPP
