#pragma once

// Slices of the Boolean cube: k-subsets of [n] as bitmasks, colex numbering,
// and Boolean functions on a slice (table- or oracle-backed).

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "slicelab/error.hpp"

namespace slicelab {

using BigInt = mpz_class;

// binom(a, b) for 0 <= b <= a, zero for every other argument pair
// (including a < 0).
BigInt binom_ext(long a, long b);

// Fits-in-64-bit binomial; throws DomainError on overflow.
std::uint64_t binom_u64(int a, int b);

// Bit (i-1) of a mask stands for position i; positions are 1-indexed.
using SubsetMask = std::uint64_t;

constexpr SubsetMask position_bit(int i) { return SubsetMask{1} << (i - 1); }
int popcount(SubsetMask s);

struct SliceDomain {
  int n = 0;
  int k = 0;

  // Throws DomainError unless 0 <= k <= n <= 63.
  void validate() const;
  std::uint64_t size() const { return binom_u64(n, k); }
  SubsetMask full_mask() const { return n == 64 ? ~SubsetMask{0} : (SubsetMask{1} << n) - 1; }

  friend bool operator==(const SliceDomain&, const SliceDomain&) = default;
};

std::uint64_t colex_rank(SubsetMask s, const SliceDomain& d);
SubsetMask colex_unrank(std::uint64_t rank, const SliceDomain& d);

// Calls visit(mask) for every k-subset of the positions in `free`, in
// increasing numeric order of the mask. Returning false stops the walk.
void for_each_subset_of(SubsetMask free, int k, const std::function<bool(SubsetMask)>& visit);

// Positions already asked and the subset of them answered "i in A".
struct QueryState {
  SubsetMask queried = 0;
  SubsetMask ones = 0;

  int num_queried() const { return popcount(queried); }
  int num_ones() const { return popcount(ones); }
  int num_zeros() const { return num_queried() - num_ones(); }

  bool is_queried(int i) const { return (queried & position_bit(i)) != 0; }
  QueryState with(int i, bool answer) const {
    return {queried | position_bit(i), answer ? (ones | position_bit(i)) : ones};
  }

  // ones is a subset of queried and counts stay within the slice budget.
  bool consistent_with(const SliceDomain& d) const;
  // True when exactly one slice element is consistent with the state.
  bool determined(const SliceDomain& d) const;

  friend bool operator==(const QueryState&, const QueryState&) = default;
};

// Subset of {0,1}; bit v set means value v is attainable.
struct ValueSet {
  std::uint8_t bits = 0;

  static constexpr ValueSet none() { return {0}; }
  static constexpr ValueSet only(bool v) { return {static_cast<std::uint8_t>(v ? 2 : 1)}; }
  static constexpr ValueSet both() { return {3}; }

  bool contains(bool v) const { return (bits >> (v ? 1 : 0)) & 1; }
  bool singleton() const { return bits == 1 || bits == 2; }
  bool empty() const { return bits == 0; }
  ValueSet operator|(ValueSet o) const { return {static_cast<std::uint8_t>(bits | o.bits)}; }

  friend bool operator==(const ValueSet&, const ValueSet&) = default;
};

class SliceFunction {
 public:
  using Oracle = std::function<bool(SubsetMask)>;
  // Returns the attainable values on the consistent set without enumerating it.
  using FeasibilityHook = std::function<ValueSet(const QueryState&)>;

  static constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 32;

  // Table indexed by colex rank; one byte per entry holding 0 or 1.
  static SliceFunction from_table(SliceDomain d, std::vector<std::uint8_t> table);
  // Text of '0'/'1' characters in colex order.
  static SliceFunction from_bits(SliceDomain d, std::string_view bits);
  static SliceFunction from_oracle(SliceDomain d, Oracle eval, FeasibilityHook hook = {});
  static SliceFunction constant(SliceDomain d, bool value);
  // Evaluates `eval` on every slice element and stores the result as a table.
  static SliceFunction tabulate(SliceDomain d, const Oracle& eval);

  const SliceDomain& domain() const { return domain_; }
  bool is_table() const { return !oracle_; }
  bool has_hook() const { return static_cast<bool>(hook_); }
  const std::vector<std::uint8_t>& table() const;

  // s must have popcount k.
  bool operator()(SubsetMask s) const;

  // "0110..." in colex order (table-backed functions only).
  std::string bits() const;

 private:
  SliceDomain domain_;
  std::vector<std::uint8_t> table_;
  Oracle oracle_;
  FeasibilityHook hook_;

  friend ValueSet consistent_values(const SliceFunction&, const QueryState&);
};

// Throws DomainError when no slice element is consistent with the state.
ValueSet consistent_values(const SliceFunction& f, const QueryState& st);

// Same result by plain enumeration, ignoring any feasibility hook.
ValueSet consistent_values_enumerated(const SliceFunction& f, const QueryState& st);

// "slice n k\n" followed by the table characters, newline-terminated.
std::string to_slice_text(const SliceFunction& f);
SliceFunction parse_slice_text(std::string_view text);
std::string to_slice_json(const SliceFunction& f);
SliceFunction parse_slice_json(std::string_view text);
// Accepts either serialization; dispatches on the first non-blank character.
SliceFunction parse_slice_any(std::string_view text);

// Positions of `s` in increasing order, 1-indexed.
std::vector<int> positions_of(SubsetMask s);
std::string subset_to_string(SubsetMask s);

}  // namespace slicelab
