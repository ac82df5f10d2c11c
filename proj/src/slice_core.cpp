#include "slicelab/slice_core.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <sstream>

#include "json.hpp"

namespace slicelab {

namespace {

using PascalTable = std::array<std::array<std::uint64_t, 65>, 65>;

// binom(a, b) for a <= 64; entries that overflow 64 bits are saturated to 0
// and flagged by binom_u64 through the exact check below.
const PascalTable& pascal() {
  static const PascalTable table = [] {
    PascalTable t{};
    for (int a = 0; a <= 64; ++a) {
      t[a][0] = 1;
      for (int b = 1; b <= a; ++b) {
        unsigned __int128 v = static_cast<unsigned __int128>(t[a - 1][b - 1]) + t[a - 1][b];
        t[a][b] = v > UINT64_MAX ? 0 : static_cast<std::uint64_t>(v);
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

BigInt binom_ext(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return r;
}

std::uint64_t binom_u64(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (a <= 64) {
    std::uint64_t v = pascal()[a][b];
    if (v != 0) return v;
  }
  BigInt exact = binom_ext(a, b);
  if (!exact.fits_ulong_p()) {
    throw DomainError("binom(" + std::to_string(a) + "," + std::to_string(b) + ") exceeds 64 bits");
  }
  return exact.get_ui();
}

int popcount(SubsetMask s) { return std::popcount(s); }

void SliceDomain::validate() const {
  if (n < 0 || n > 63) throw DomainError("slice size n=" + std::to_string(n) + " outside [0,63]");
  if (k < 0 || k > n) {
    throw DomainError("slice weight k=" + std::to_string(k) + " outside [0," + std::to_string(n) + "]");
  }
}

std::uint64_t colex_rank(SubsetMask s, const SliceDomain& d) {
  if (popcount(s) != d.k || (s & ~d.full_mask()) != 0) {
    throw DomainError("subset " + subset_to_string(s) + " is not in the slice (n=" + std::to_string(d.n) +
                      ", k=" + std::to_string(d.k) + ")");
  }
  std::uint64_t rank = 0;
  int order = 0;
  while (s != 0) {
    int pos = std::countr_zero(s) + 1;
    s &= s - 1;
    ++order;
    rank += binom_u64(pos - 1, order);
  }
  return rank;
}

SubsetMask colex_unrank(std::uint64_t rank, const SliceDomain& d) {
  if (rank >= d.size()) throw DomainError("colex rank " + std::to_string(rank) + " out of range");
  SubsetMask s = 0;
  int hi = d.n;
  for (int order = d.k; order >= 1; --order) {
    // Largest c < hi with binom(c, order) <= rank.
    int c = hi - 1;
    while (binom_u64(c, order) > rank) --c;
    s |= position_bit(c + 1);
    rank -= binom_u64(c, order);
    hi = c;
  }
  return s;
}

void for_each_subset_of(SubsetMask free, int k, const std::function<bool(SubsetMask)>& visit) {
  int m = popcount(free);
  if (k < 0 || k > m) return;
  std::array<SubsetMask, 64> bit_of{};
  {
    int idx = 0;
    for (SubsetMask f = free; f != 0; f &= f - 1) bit_of[idx++] = f & (~f + 1);
  }
  auto expand = [&](std::uint64_t x) {
    SubsetMask out = 0;
    while (x != 0) {
      out |= bit_of[std::countr_zero(x)];
      x &= x - 1;
    }
    return out;
  };
  if (k == 0) {
    visit(0);
    return;
  }
  const std::uint64_t limit = m == 64 ? 0 : (std::uint64_t{1} << m);
  std::uint64_t x = (std::uint64_t{1} << k) - 1;
  while (true) {
    if (!visit(expand(x))) return;
    // Gosper's hack: next integer with the same popcount.
    std::uint64_t c = x & (~x + 1);
    std::uint64_t r = x + c;
    if (r == 0) return;
    x = (((r ^ x) >> 2) / c) | r;
    if (limit != 0 && x >= limit) return;
  }
}

bool QueryState::consistent_with(const SliceDomain& d) const {
  if ((ones & ~queried) != 0) return false;
  if ((queried & ~d.full_mask()) != 0) return false;
  return num_ones() <= d.k && num_zeros() <= d.n - d.k;
}

bool QueryState::determined(const SliceDomain& d) const {
  return num_ones() == d.k || num_zeros() == d.n - d.k;
}

SliceFunction SliceFunction::from_table(SliceDomain d, std::vector<std::uint8_t> table) {
  d.validate();
  if (d.size() > kMaxTableEntries) {
    throw ResourceError("table backing limited to 2^32 entries; use an oracle", d.size());
  }
  if (table.size() != d.size()) {
    throw DomainError("table length " + std::to_string(table.size()) + " != binom(n,k) = " +
                      std::to_string(d.size()));
  }
  for (auto& v : table) {
    if (v > 1) throw DomainError("table entries must be 0 or 1");
  }
  SliceFunction f;
  f.domain_ = d;
  f.table_ = std::move(table);
  return f;
}

SliceFunction SliceFunction::from_bits(SliceDomain d, std::string_view bits) {
  std::vector<std::uint8_t> table;
  table.reserve(bits.size());
  for (char c : bits) {
    if (c == '0' || c == '1') {
      table.push_back(static_cast<std::uint8_t>(c - '0'));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in truth table");
    }
  }
  return from_table(d, std::move(table));
}

SliceFunction SliceFunction::from_oracle(SliceDomain d, Oracle eval, FeasibilityHook hook) {
  d.validate();
  if (!eval) throw DomainError("oracle-backed function needs an evaluation procedure");
  SliceFunction f;
  f.domain_ = d;
  f.oracle_ = std::move(eval);
  f.hook_ = std::move(hook);
  return f;
}

SliceFunction SliceFunction::constant(SliceDomain d, bool value) {
  d.validate();
  return from_table(d, std::vector<std::uint8_t>(d.size(), value ? 1 : 0));
}

SliceFunction SliceFunction::tabulate(SliceDomain d, const Oracle& eval) {
  d.validate();
  if (d.size() > kMaxTableEntries) {
    throw ResourceError("table backing limited to 2^32 entries; use an oracle", d.size());
  }
  std::vector<std::uint8_t> table(d.size());
  for (std::uint64_t r = 0; r < table.size(); ++r) table[r] = eval(colex_unrank(r, d)) ? 1 : 0;
  return from_table(d, std::move(table));
}

const std::vector<std::uint8_t>& SliceFunction::table() const {
  if (!is_table()) throw DomainError("function is oracle-backed and has no table");
  return table_;
}

bool SliceFunction::operator()(SubsetMask s) const {
  if (oracle_) {
    if (popcount(s) != domain_.k) throw DomainError("subset " + subset_to_string(s) + " is not in the slice");
    return oracle_(s);
  }
  return table_[colex_rank(s, domain_)] != 0;
}

std::string SliceFunction::bits() const {
  const auto& t = table();
  std::string out(t.size(), '0');
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] ? '1' : '0';
  return out;
}

namespace {

void require_consistent(const SliceDomain& d, const QueryState& st) {
  if (!st.consistent_with(d)) {
    throw DomainError("query state (queried=" + subset_to_string(st.queried) + ", ones=" + subset_to_string(st.ones) +
                      ") has no consistent slice element");
  }
}

ValueSet enumerate_values(const SliceFunction& f, const QueryState& st) {
  const SliceDomain& d = f.domain();
  ValueSet out = ValueSet::none();
  SubsetMask free = d.full_mask() & ~st.queried;
  for_each_subset_of(free, d.k - st.num_ones(), [&](SubsetMask sub) {
    out = out | ValueSet::only(f(st.ones | sub));
    return out != ValueSet::both();
  });
  return out;
}

}  // namespace

ValueSet consistent_values(const SliceFunction& f, const QueryState& st) {
  require_consistent(f.domain(), st);
  if (f.hook_) return f.hook_(st);
  return enumerate_values(f, st);
}

ValueSet consistent_values_enumerated(const SliceFunction& f, const QueryState& st) {
  require_consistent(f.domain(), st);
  return enumerate_values(f, st);
}

std::string to_slice_text(const SliceFunction& f) {
  std::ostringstream os;
  os << "slice " << f.domain().n << ' ' << f.domain().k << '\n' << f.bits() << '\n';
  return os.str();
}

SliceFunction parse_slice_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string tag;
  SliceDomain d;
  if (!(is >> tag >> d.n >> d.k) || tag != "slice") {
    throw ParseError("expected header line \"slice n k\"");
  }
  d.validate();
  std::string bits;
  std::string chunk;
  while (is >> chunk) bits += chunk;
  try {
    return SliceFunction::from_bits(d, bits);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

std::string to_slice_json(const SliceFunction& f) {
  nlohmann::ordered_json j;
  j["n"] = f.domain().n;
  j["k"] = f.domain().k;
  j["table"] = f.bits();
  return j.dump();
}

SliceFunction parse_slice_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    SliceDomain d{j.at("n").get<int>(), j.at("k").get<int>()};
    d.validate();
    return SliceFunction::from_bits(d, j.at("table").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("slice JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("slice JSON: ") + e.what());
  }
}

SliceFunction parse_slice_any(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_slice_json(text) : parse_slice_text(text);
  }
  throw ParseError("empty slice function input");
}

std::vector<int> positions_of(SubsetMask s) {
  std::vector<int> out;
  while (s != 0) {
    out.push_back(std::countr_zero(s) + 1);
    s &= s - 1;
  }
  return out;
}

std::string subset_to_string(SubsetMask s) {
  std::string out = "{";
  bool first = true;
  for (int p : positions_of(s)) {
    if (!first) out += ',';
    out += std::to_string(p);
    first = false;
  }
  return out + "}";
}

}  // namespace slicelab
