// Copyright 2026 The ltw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LTW_TERM_HPP_
#define LTW_TERM_HPP_

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltw {

// Raised on malformed input or violated constructor preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parse failure with a 1-based column into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t column)
      : Error(what + " (column " + std::to_string(column) + ")"),
        column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

// Structured value used for public inputs, secrets and outputs alike.
//
// Canonical text forms:
//   *                unit
//   17               natural number
//   (a,b,c)  ()      tuple
//   inl a  inr a     tagged value
//   {0,3}  {}        finite set of naturals (sorted, no repeats)
//   code[...]        serialized strategy table
//   stages[3,never]  clocked halting table
//   machine[. 0/1 1] staged machine, one row per oracle string
//   periodic[00;1]   eventually periodic set prefix;period
//
// Terms are immutable; copies share their payload.
class Term {
 public:
  enum class Kind : std::uint8_t {
    kUnit,
    kNat,
    kTuple,
    kTagged,
    kSet,
    kCode,
    kStages,
    kMachine,
    kPeriodic,
  };

  Term() = default;  // unit

  static Term unit() { return Term(); }
  static Term nat(std::uint64_t n);
  static Term tuple(std::vector<Term> items);
  static Term tagged(int tag, Term inner);
  static Term inl(Term inner) { return tagged(0, std::move(inner)); }
  static Term inr(Term inner) { return tagged(1, std::move(inner)); }
  // Sorts and deduplicates.
  static Term set(std::vector<std::uint64_t> elems);
  static Term code(std::string rows);
  // Entry kNever means "never halts".
  static Term stages(std::vector<std::uint64_t> halting_stage);
  // rows[alpha][s-1] is the value at stage s or kNever while pending.
  static Term machine(const std::vector<std::vector<std::uint64_t>>& rows);
  static Term periodic(std::string prefix, std::string period);

  Kind kind() const { return kind_; }
  bool is_unit() const { return kind_ == Kind::kUnit; }
  bool is_nat() const { return kind_ == Kind::kNat; }

  std::uint64_t as_nat() const;
  const std::vector<Term>& items() const;      // tuple
  int tag() const;                             // tagged
  const Term& inner() const;                   // tagged
  const std::vector<std::uint64_t>& elems() const;  // set, stages, machine
  const std::string& text() const;             // code, periodic

  // Machine shape.
  int machine_oracle_bits() const;
  int machine_stages() const;
  std::uint64_t machine_entry(std::size_t alpha, int stage) const;

  // Periodic parts.
  std::string periodic_prefix() const;
  std::string periodic_period() const;

  std::string str() const;
  void write(std::string& out) const;

  static Term parse(std::string_view text);

  friend bool operator==(const Term& a, const Term& b) {
    return compare(a, b) == 0;
  }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    const int c = compare(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::size_t hash() const;

 private:
  struct Payload {
    std::vector<Term> items;
    std::vector<std::uint64_t> nums;
    std::string text;
  };

  static int compare(const Term& a, const Term& b);
  const Payload& payload() const;

  Kind kind_ = Kind::kUnit;
  std::uint64_t word_ = 0;  // nat value, tag, or machine oracle bits
  std::shared_ptr<const Payload> payload_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Incremental recursive-descent reader shared by all text formats.
class TermReader {
 public:
  explicit TermReader(std::string_view text) : text_(text) {}

  Term term();
  std::vector<Term> term_list(char open, char close);
  void expect(std::string_view token);
  bool accept(std::string_view token);
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_spaces();
  std::size_t column() const { return pos_ + 1; }
  std::string_view rest() const { return text_.substr(pos_); }
  [[noreturn]] void fail(const std::string& what) const;
  std::uint64_t number();

 private:
  std::string bits();
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

using Terms = std::vector<Term>;

std::string join_terms(const Terms& terms, std::string_view sep);

}  // namespace ltw

#endif  // LTW_TERM_HPP_
