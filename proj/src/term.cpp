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

#include "ltw/term.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ltw {
namespace {

template <typename T>
int three_way(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_nums(const std::vector<std::uint64_t>& a,
                 const std::vector<std::uint64_t>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = three_way(a[i], b[i])) return c;
  }
  return three_way(a.size(), b.size());
}

bool valid_bits(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](char ch) { return ch == '0' || ch == '1'; });
}

void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

Term Term::nat(std::uint64_t n) {
  Term t;
  t.kind_ = Kind::kNat;
  t.word_ = n;
  return t;
}

Term Term::tuple(std::vector<Term> items) {
  Term t;
  t.kind_ = Kind::kTuple;
  auto p = std::make_shared<Payload>();
  p->items = std::move(items);
  t.payload_ = std::move(p);
  return t;
}

Term Term::tagged(int tag, Term inner) {
  if (tag != 0 && tag != 1) throw Error("tag must be 0 or 1");
  Term t;
  t.kind_ = Kind::kTagged;
  t.word_ = static_cast<std::uint64_t>(tag);
  auto p = std::make_shared<Payload>();
  p->items.push_back(std::move(inner));
  t.payload_ = std::move(p);
  return t;
}

Term Term::set(std::vector<std::uint64_t> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Term t;
  t.kind_ = Kind::kSet;
  auto p = std::make_shared<Payload>();
  p->nums = std::move(elems);
  t.payload_ = std::move(p);
  return t;
}

Term Term::code(std::string rows) {
  int depth = 0;
  for (char ch : rows) {
    if (ch == '[') ++depth;
    if (ch == ']' && --depth < 0) throw Error("unbalanced brackets in code");
  }
  if (depth != 0) throw Error("unbalanced brackets in code");
  Term t;
  t.kind_ = Kind::kCode;
  auto p = std::make_shared<Payload>();
  p->text = std::move(rows);
  t.payload_ = std::move(p);
  return t;
}

Term Term::stages(std::vector<std::uint64_t> halting_stage) {
  for (auto s : halting_stage) {
    if (s == 0) throw Error("halting stages start at 1");
  }
  Term t;
  t.kind_ = Kind::kStages;
  auto p = std::make_shared<Payload>();
  p->nums = std::move(halting_stage);
  t.payload_ = std::move(p);
  return t;
}

Term Term::machine(const std::vector<std::vector<std::uint64_t>>& rows) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < rows.size()) ++bits;
  if (rows.empty() || (std::size_t{1} << bits) != rows.size()) {
    throw Error("machine needs 2^T rows");
  }
  const std::size_t stages = rows[0].size();
  if (stages == 0) throw Error("machine needs at least one stage");
  auto p = std::make_shared<Payload>();
  for (const auto& row : rows) {
    if (row.size() != stages) throw Error("machine rows differ in length");
    for (std::size_t s = 1; s < row.size(); ++s) {
      if (row[s - 1] != kNever && row[s] != row[s - 1]) {
        throw Error("machine values must persist once produced");
      }
    }
    p->nums.insert(p->nums.end(), row.begin(), row.end());
  }
  Term t;
  t.kind_ = Kind::kMachine;
  t.word_ = bits;
  t.payload_ = std::move(p);
  return t;
}

Term Term::periodic(std::string prefix, std::string period) {
  if (period.empty()) throw Error("period must be nonempty");
  if (!valid_bits(prefix) || !valid_bits(period)) {
    throw Error("periodic sets use bit strings");
  }
  Term t;
  t.kind_ = Kind::kPeriodic;
  t.word_ = prefix.size();
  auto p = std::make_shared<Payload>();
  p->text = prefix + period;
  t.payload_ = std::move(p);
  return t;
}

const Term::Payload& Term::payload() const {
  static const Payload kEmpty;
  return payload_ ? *payload_ : kEmpty;
}

std::uint64_t Term::as_nat() const {
  if (kind_ != Kind::kNat) throw Error("expected a number, got " + str());
  return word_;
}

const std::vector<Term>& Term::items() const {
  if (kind_ != Kind::kTuple) throw Error("expected a tuple, got " + str());
  return payload().items;
}

int Term::tag() const {
  if (kind_ != Kind::kTagged) throw Error("expected inl/inr, got " + str());
  return static_cast<int>(word_);
}

const Term& Term::inner() const {
  if (kind_ != Kind::kTagged) throw Error("expected inl/inr, got " + str());
  return payload().items[0];
}

const std::vector<std::uint64_t>& Term::elems() const {
  if (kind_ != Kind::kSet && kind_ != Kind::kStages &&
      kind_ != Kind::kMachine) {
    throw Error("expected a set, got " + str());
  }
  return payload().nums;
}

const std::string& Term::text() const {
  if (kind_ != Kind::kCode && kind_ != Kind::kPeriodic) {
    throw Error("expected code, got " + str());
  }
  return payload().text;
}

int Term::machine_oracle_bits() const {
  if (kind_ != Kind::kMachine) throw Error("expected a machine, got " + str());
  return static_cast<int>(word_);
}

int Term::machine_stages() const {
  const auto rows = std::size_t{1} << machine_oracle_bits();
  return static_cast<int>(payload().nums.size() / rows);
}

std::uint64_t Term::machine_entry(std::size_t alpha, int stage) const {
  const int stages = machine_stages();
  if (stage < 1) return kNever;
  if (stage > stages) stage = stages;
  return payload().nums[alpha * stages + (stage - 1)];
}

std::string Term::periodic_prefix() const {
  if (kind_ != Kind::kPeriodic) throw Error("expected periodic, got " + str());
  return payload().text.substr(0, word_);
}

std::string Term::periodic_period() const {
  if (kind_ != Kind::kPeriodic) throw Error("expected periodic, got " + str());
  return payload().text.substr(word_);
}

int Term::compare(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return three_way(a.kind_, b.kind_);
  switch (a.kind_) {
    case Kind::kUnit:
      return 0;
    case Kind::kNat:
      return three_way(a.word_, b.word_);
    case Kind::kTuple: {
      const auto& x = a.payload().items;
      const auto& y = b.payload().items;
      const std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(x[i], y[i])) return c;
      }
      return three_way(x.size(), y.size());
    }
    case Kind::kTagged:
      if (a.word_ != b.word_) return three_way(a.word_, b.word_);
      return compare(a.payload().items[0], b.payload().items[0]);
    case Kind::kSet:
    case Kind::kStages:
      return compare_nums(a.payload().nums, b.payload().nums);
    case Kind::kMachine:
      if (a.word_ != b.word_) return three_way(a.word_, b.word_);
      return compare_nums(a.payload().nums, b.payload().nums);
    case Kind::kCode:
      return three_way(a.payload().text, b.payload().text);
    case Kind::kPeriodic:
      if (a.word_ != b.word_) return three_way(a.word_, b.word_);
      return three_way(a.payload().text, b.payload().text);
  }
  return 0;
}

std::size_t Term::hash() const {
  std::size_t seed = static_cast<std::size_t>(kind_);
  hash_mix(seed, std::hash<std::uint64_t>{}(word_));
  if (!payload_) return seed;
  for (const auto& item : payload_->items) hash_mix(seed, item.hash());
  for (auto n : payload_->nums) hash_mix(seed, std::hash<std::uint64_t>{}(n));
  if (!payload_->text.empty()) {
    hash_mix(seed, std::hash<std::string>{}(payload_->text));
  }
  return seed;
}

void Term::write(std::string& out) const {
  switch (kind_) {
    case Kind::kUnit:
      out += '*';
      return;
    case Kind::kNat:
      out += std::to_string(word_);
      return;
    case Kind::kTuple: {
      out += '(';
      bool first = true;
      for (const auto& item : payload().items) {
        if (!first) out += ',';
        first = false;
        item.write(out);
      }
      out += ')';
      return;
    }
    case Kind::kTagged:
      out += word_ == 0 ? "inl " : "inr ";
      payload().items[0].write(out);
      return;
    case Kind::kSet: {
      out += '{';
      bool first = true;
      for (auto n : payload().nums) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(n);
      }
      out += '}';
      return;
    }
    case Kind::kCode:
      out += "code[";
      out += payload().text;
      out += ']';
      return;
    case Kind::kStages: {
      out += "stages[";
      bool first = true;
      for (auto n : payload().nums) {
        if (!first) out += ',';
        first = false;
        out += n == kNever ? std::string("never") : std::to_string(n);
      }
      out += ']';
      return;
    }
    case Kind::kMachine: {
      out += "machine[";
      const int stages = machine_stages();
      const auto& nums = payload().nums;
      for (std::size_t i = 0; i < nums.size(); ++i) {
        if (i > 0) out += (i % stages == 0) ? '/' : ' ';
        out += nums[i] == kNever ? std::string(".") : std::to_string(nums[i]);
      }
      out += ']';
      return;
    }
    case Kind::kPeriodic:
      out += "periodic[";
      out += periodic_prefix();
      out += ';';
      out += periodic_period();
      out += ']';
      return;
  }
}

std::string Term::str() const {
  std::string out;
  write(out);
  return out;
}

Term Term::parse(std::string_view text) {
  TermReader reader(text);
  reader.skip_spaces();
  Term t = reader.term();
  reader.skip_spaces();
  if (!reader.at_end()) reader.fail("trailing characters");
  return t;
}

void TermReader::fail(const std::string& what) const {
  throw ParseError(what, column());
}

void TermReader::skip_spaces() {
  while (!at_end() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
}

bool TermReader::accept(std::string_view token) {
  if (text_.substr(pos_, token.size()) == token) {
    pos_ += token.size();
    return true;
  }
  return false;
}

void TermReader::expect(std::string_view token) {
  if (!accept(token)) fail("expected '" + std::string(token) + "'");
}

std::uint64_t TermReader::number() {
  if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
  std::uint64_t n = 0;
  while (std::isdigit(static_cast<unsigned char>(peek()))) {
    const std::uint64_t digit = text_[pos_] - '0';
    if (n > (kNever - 1 - digit) / 10) fail("number too large");
    n = n * 10 + digit;
    ++pos_;
  }
  return n;
}

std::string TermReader::bits() {
  std::string out;
  while (peek() == '0' || peek() == '1') out += text_[pos_++];
  return out;
}

std::vector<Term> TermReader::term_list(char open, char close) {
  expect(std::string_view(&open, 1));
  std::vector<Term> out;
  skip_spaces();
  if (accept(std::string_view(&close, 1))) return out;
  while (true) {
    skip_spaces();
    out.push_back(term());
    skip_spaces();
    if (accept(std::string_view(&close, 1))) return out;
    expect(",");
  }
}

Term TermReader::term() {
  const char ch = peek();
  if (ch == '*') {
    ++pos_;
    return Term::unit();
  }
  if (std::isdigit(static_cast<unsigned char>(ch))) return Term::nat(number());
  if (ch == '(') return Term::tuple(term_list('(', ')'));
  if (ch == '{') {
    ++pos_;
    std::vector<std::uint64_t> elems;
    skip_spaces();
    if (accept("}")) return Term::set(elems);
    while (true) {
      skip_spaces();
      const std::uint64_t n = number();
      if (!elems.empty() && n <= elems.back()) fail("set elements must increase");
      elems.push_back(n);
      skip_spaces();
      if (accept("}")) return Term::set(std::move(elems));
      expect(",");
    }
  }
  if (accept("inl") || accept("inr")) {
    const int tag = text_[pos_ - 1] == 'l' ? 0 : 1;
    if (peek() != ' ') fail("expected a space after the tag");
    skip_spaces();
    return Term::tagged(tag, term());
  }
  if (accept("code[")) {
    const std::size_t start = pos_;
    int depth = 1;
    while (!at_end()) {
      const char c = text_[pos_];
      if (c == '[') ++depth;
      if (c == ']' && --depth == 0) break;
      ++pos_;
    }
    if (at_end()) fail("unterminated code");
    std::string rows(text_.substr(start, pos_ - start));
    ++pos_;
    return Term::code(std::move(rows));
  }
  if (accept("stages[")) {
    std::vector<std::uint64_t> stages;
    if (accept("]")) return Term::stages(stages);
    while (true) {
      skip_spaces();
      if (accept("never")) {
        stages.push_back(kNever);
      } else {
        const std::uint64_t s = number();
        if (s == 0) fail("halting stages start at 1");
        stages.push_back(s);
      }
      skip_spaces();
      if (accept("]")) return Term::stages(std::move(stages));
      expect(",");
    }
  }
  if (accept("machine[")) {
    std::vector<std::vector<std::uint64_t>> rows(1);
    while (true) {
      skip_spaces();
      if (accept(".")) {
        rows.back().push_back(kNever);
      } else {
        rows.back().push_back(number());
      }
      skip_spaces();
      if (accept("]")) break;
      if (accept("/")) rows.emplace_back();
    }
    try {
      return Term::machine(rows);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (accept("periodic[")) {
    std::string prefix = bits();
    expect(";");
    std::string period = bits();
    if (period.empty()) fail("period must be nonempty");
    expect("]");
    return Term::periodic(std::move(prefix), std::move(period));
  }
  fail("unexpected input");
}

std::string join_terms(const Terms& terms, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0) out += sep;
    terms[i].write(out);
  }
  return out;
}

}  // namespace ltw
