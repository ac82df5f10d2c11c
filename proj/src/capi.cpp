#include "slicelab/slicelab.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "slicelab/counting_bounds.hpp"
#include "slicelab/disc_game.hpp"
#include "slicelab/discmax.hpp"
#include "slicelab/error.hpp"
#include "slicelab/query_solver.hpp"

using json = nlohmann::ordered_json;
using namespace slicelab;

struct slicelab_function {
  SliceFunction f;
};

struct slicelab_match {
  Match match;
  std::optional<Role> opponent_role;
  PositionerFn positioner;
  SigngiverFn signgiver;
};

namespace {

thread_local std::string g_last_error;

struct IoError : Error {
  using Error::Error;
};
struct ArgumentError : Error {
  using Error::Error;
};

template <class F>
int guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return SLICELAB_OK;
  } catch (const ResourceError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_RESOURCE;
  } catch (const PreconditionError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_PRECONDITION;
  } catch (const StructuralError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_STRUCTURAL;
  } catch (const ParseError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_PARSE;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_DOMAIN;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_IO;
  } catch (const ArgumentError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_ARGUMENT;
  } catch (const InternalError& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_INTERNAL;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SLICELAB_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SLICELAB_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  need(out, "out");
  *out = dup(j.dump());
}

std::string hi_str(const BigFloat& x) { return x.to_string(17, MPFR_RNDU); }
std::string lo_str(const BigFloat& x) { return x.to_string(17, MPFR_RNDD); }

json interval_json(const RatioInterval& r) {
  return {{"lo", lo_str(r.lo)}, {"hi", hi_str(r.hi)}, {"precision_bits", r.precision_bits}};
}

Board read_board(const char* text) {
  need(text, "board");
  std::string_view s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  if (!s.empty() && (s.front() == '[' || s.front() == '"')) return Board::from_json(s);
  return Board::parse(s);
}

std::string str(const char* s, const char* what) {
  need(s, what);
  return s;
}

int threads_or_one(int t) { return t < 1 ? 1 : t; }

json trace_json(const MoveTrace& t) {
  json moves = json::array();
  int i = 0;
  for (const Move& m : t.moves) {
    json j;
    j["move"] = ++i;
    j["position"] = m.position;
    j["sign"] = m.sign;
    j["peak_doubled"] = m.peak_doubled;
    moves.push_back(j);
  }
  return moves;
}

json half_json(int doubled) {
  if (doubled % 2 == 0) return doubled / 2;
  return doubled / 2.0;
}

json completion_json(const Completion& c) {
  return {{"board", c.board.to_string()},
          {"balanced", c.balanced},
          {"max_prefix_disc", c.max_prefix_disc},
          {"max_interval_disc", c.max_interval_disc}};
}

json claim_sweep_json(const ClaimSweep& s) {
  json j;
  j["n"] = s.n;
  j["d"] = s.d;
  j["boards"] = s.boards;
  json variants = json::object();
  for (int v = 0; v < 4; ++v) {
    auto cv = static_cast<ClaimVariant>(v);
    variants[to_string(cv)] = {{"hypothesis_true", s.hypothesis_true[v]},
                               {"sound", s.sound[v]},
                               {"unsound", s.hypothesis_true[v] - s.sound[v]}};
  }
  j["variants"] = variants;
  json findings = json::array();
  for (const ClaimFinding& f : s.findings) {
    findings.push_back({{"variant", to_string(f.variant)}, {"d", f.d}, {"board", f.board}});
  }
  j["findings"] = findings;
  j["even_interval"] = {{"completions", s.completions},
                        {"balanced", s.completions_balanced},
                        {"unbalanced_but_feasible", s.completions_unbalanced_but_feasible},
                        {"interval_violations", s.completion_interval_violations}};
  return j;
}

std::vector<int> parse_order(const char* order) {
  std::vector<int> out;
  if (order == nullptr) return out;
  std::stringstream ss(order);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad position '" + item + "' in order");
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char* slicelab_version(void) { return "1.0.0"; }

const char* slicelab_status_name(int status) {
  switch (status) {
    case SLICELAB_OK: return "ok";
    case SLICELAB_ERR_DOMAIN: return "domain";
    case SLICELAB_ERR_PRECONDITION: return "precondition";
    case SLICELAB_ERR_STRUCTURAL: return "structural";
    case SLICELAB_ERR_PARSE: return "parse";
    case SLICELAB_ERR_RESOURCE: return "resource";
    case SLICELAB_ERR_INTERNAL: return "internal";
    case SLICELAB_ERR_IO: return "io";
    case SLICELAB_ERR_ARGUMENT: return "argument";
  }
  return "unknown";
}

const char* slicelab_last_error(void) { return g_last_error.c_str(); }

void slicelab_string_free(char* s) { std::free(s); }

// ---- slice functions -------------------------------------------------------

int slicelab_function_parse(const char* text, slicelab_function** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new slicelab_function{parse_slice_any(text)};
  });
}

int slicelab_function_load(const char* path, slicelab_function** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(std::string("cannot open ") + path);
    std::stringstream buf;
    buf << in.rdbuf();
    *out = new slicelab_function{parse_slice_any(buf.str())};
  });
}

int slicelab_function_from_bits(int n, int k, const char* bits, slicelab_function** out) {
  return guarded([&] {
    need(bits, "bits");
    need(out, "out");
    *out = new slicelab_function{SliceFunction::from_bits({n, k}, bits)};
  });
}

int slicelab_function_compose(const slicelab_function* f1, const slicelab_function* f2, slicelab_function** out) {
  return guarded([&] {
    need(f1, "f1");
    need(f2, "f2");
    need(out, "out");
    *out = new slicelab_function{compose(f1->f, f2->f)};
  });
}

void slicelab_function_free(slicelab_function* f) { delete f; }

int slicelab_function_json(const slicelab_function* f, char** out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = dup(to_slice_json(f->f));
  });
}

int slicelab_function_text(const slicelab_function* f, char** out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    *out = dup(to_slice_text(f->f));
  });
}

// ---- query solver ----------------------------------------------------------

int slicelab_solve(const slicelab_function* f, int extract_tree, int threads, char** out) {
  return guarded([&] {
    need(f, "f");
    SolveOptions opts;
    opts.extract_tree = extract_tree != 0;
    opts.threads = threads_or_one(threads);
    DepthResult r = solve_depth(f->f, opts);
    json j;
    j["n"] = f->f.domain().n;
    j["k"] = f->f.domain().k;
    j["D"] = r.depth;
    j["E"] = r.co_depth;
    j["nodes_expanded"] = r.nodes_expanded;
    if (r.optimal_tree) j["tree"] = json::parse(r.optimal_tree->to_json());
    emit(out, j);
  });
}

int slicelab_solve_dot(const slicelab_function* f, int threads, char** out) {
  return guarded([&] {
    need(f, "f");
    need(out, "out");
    SolveOptions opts;
    opts.extract_tree = true;
    opts.threads = threads_or_one(threads);
    *out = dup(solve_depth(f->f, opts).optimal_tree->to_dot());
  });
}

int slicelab_verify_tree(const slicelab_function* f, const char* tree_json, char** out) {
  return guarded([&] {
    need(f, "f");
    need(tree_json, "tree_json");
    TreeCheck c = verify_tree(DecisionTree::from_json(tree_json), f->f);
    json j;
    j["valid"] = c.valid;
    j["height"] = c.height;
    if (c.counterexample) j["counterexample"] = positions_of(*c.counterexample);
    emit(out, j);
  });
}

int slicelab_maxdepth(int n, int k, int threads, char** out) {
  return guarded([&] {
    MaxDepthResult r = max_depth_all({n, k}, 20, threads_or_one(threads));
    json j;
    j["n"] = n;
    j["k"] = k;
    j["D"] = r.depth;
    j["E"] = r.co_depth;
    j["witness"] = r.witness.bits();
    j["functions_checked"] = r.functions_checked;
    emit(out, j);
  });
}

int slicelab_census(int n, int k, int hmax, int mode, char** out) {
  return guarded([&] {
    if (mode != 0 && mode != 1) throw ArgumentError("census mode must be 0 (padded) or 1 (early leaves)");
    CensusOptions opts;
    opts.mode = mode == 0 ? CensusMode::padded : CensusMode::early_leaves;
    BigInt count = census_trees({n, k}, hmax, opts);
    json j;
    j["n"] = n;
    j["k"] = k;
    j["hmax"] = hmax;
    j["mode"] = mode == 0 ? "padded" : "early_leaves";
    j["count"] = count.get_str();
    emit(out, j);
  });
}

// ---- counting bounds -------------------------------------------------------

int slicelab_bounds_g(int n, int k, int t, int precision_bits, char** out) {
  return guarded([&] {
    LogMass m = g_logmass(n, k, t);
    RatioInterval lg = log2_interval(m, precision_bits < 64 ? 256 : precision_bits);
    json j;
    j["n"] = n;
    j["k"] = k;
    j["t"] = t;
    j["pow2"] = m.pow2.get_str();
    json factors = json::object();
    for (const auto& [base, e] : m.factors) factors[std::to_string(base)] = e.get_str();
    j["factors"] = factors;
    j["log2_g"] = interval_json(lg);
    j["binom"] = binom_ext(n, k).get_str();
    // Spelled out only while it stays readable.
    if (lg.hi.compare(4096.0) < 0) j["value"] = m.expand().get_str();
    emit(out, j);
  });
}

int slicelab_bounds_kozep(int t, int n_lo, int n_hi, int threads, char** out) {
  return guarded([&] {
    KozepReport r = verify_kozep_range(t, n_lo, n_hi, {}, threads_or_one(threads));
    json rows = json::array();
    for (const KozepRow& row : r.rows) {
      rows.push_back({{"n", row.n},
                      {"verdict", to_string(row.verdict)},
                      {"ratio_lo", lo_str(row.ratio.lo)},
                      {"ratio_hi", hi_str(row.ratio.hi)},
                      {"precision_bits", row.ratio.precision_bits}});
    }
    json j;
    j["t"] = t;
    j["from"] = n_lo;
    j["to"] = n_hi;
    j["rows"] = rows;
    j["max_hi"] = hi_str(r.max_hi);
    j["certified"] = r.certified;
    j["not_certified"] = r.not_certified;
    j["indeterminate"] = r.indeterminate;
    j["all_certified"] = r.all_certified();
    emit(out, j);
  });
}

int slicelab_bounds_kozep_chain(int precision_bits, char** out) {
  return guarded([&] {
    KozepChain c = kozep_chain(precision_bits < 64 ? 256 : precision_bits);
    json j;
    j["precision_bits"] = c.first.precision_bits;
    j["first"] = interval_json(c.first);
    j["first_below_0.2"] = c.first.certainly_below(0.2);
    j["middle"] = interval_json(c.middle);
    j["middle_below_0.71"] = c.middle.certainly_below(0.71);
    j["tail"] = interval_json(c.tail);
    j["stated_total"] = interval_json(c.stated_total);
    j["stated_total_below_0.92"] = c.stated_total.certainly_below(0.92);
    j["actual_total"] = interval_json(c.actual_total);
    j["actual_total_below_0.92"] = c.actual_total.certainly_below(0.92);
    emit(out, j);
  });
}

int slicelab_bounds_alfa(long alpha_num, long alpha_den, int C, int n, int precision_bits, char** out) {
  return guarded([&] {
    AlfaResult r = alfa_inequality(alpha_num, alpha_den, C, n, precision_bits < 64 ? 256 : precision_bits);
    json j;
    j["alpha"] = std::to_string(alpha_num) + "/" + std::to_string(alpha_den);
    j["C"] = C;
    j["n"] = n;
    j["k"] = r.k;
    j["verdict"] = to_string(r.verdict);
    j["lhs"] = interval_json(r.lhs);
    j["rhs"] = r.rhs.get_str();
    emit(out, j);
  });
}

int slicelab_bounds_certify(int n, int k, char** out) {
  return guarded([&] {
    BoundCertificate c = certify_E_upper(n, k);
    json j;
    j["n"] = c.n;
    j["k"] = c.k;
    j["t"] = c.t;
    j["verdict"] = to_string(c.verdict);
    if (c.t >= 0) {
      j["log2_g_hi"] = hi_str(log2_interval(g_logmass(n, k, c.t), c.margin.precision_bits).hi);
      j["margin_hi"] = hi_str(c.margin.hi);
    } else {
      j["log2_g_hi"] = nullptr;
      j["margin_hi"] = nullptr;
    }
    j["binom"] = c.binom.get_str();
    j["certified_ts"] = c.certified_ts;
    j["upward_closed"] = c.upward_closed;
    emit(out, j);
  });
}

// ---- Disc-max --------------------------------------------------------------

int slicelab_discmax_eval(const char* board, int d, char** out) {
  return guarded([&] {
    Board b = read_board(board);
    json j;
    j["board"] = b.to_string();
    j["d"] = d;
    j["value"] = eval_discmax(b, d) ? 1 : 0;
    j["max_prefix_disc"] = max_prefix_disc(b);
    j["max_interval_disc"] = max_interval_disc(b);
    j["balanced"] = b.balanced();
    emit(out, j);
  });
}

int slicelab_discmax_feasible(const char* board, int d, int target, char** out) {
  return guarded([&] {
    Board b = read_board(board);
    FeasibilityVerdict v = feasible_exact(b, d, target ? Target::true_value : Target::false_value);
    json j;
    j["board"] = b.to_string();
    j["d"] = d;
    j["target"] = target ? "true" : "false";
    j["feasible"] = v.feasible;
    j["witness"] = v.witness ? json(v.witness->to_string()) : json(nullptr);
    emit(out, j);
  });
}

int slicelab_discmax_claim(const char* board, int d, const char* variant, char** out) {
  return guarded([&] {
    Board b = read_board(board);
    ClaimVariant v = parse_claim_variant(str(variant, "variant"));
    const bool hyp = claim_condition(b, d, v);
    json j;
    j["board"] = b.to_string();
    j["d"] = d;
    j["variant"] = to_string(v);
    j["hypothesis"] = hyp;
    j["target"] = claim_target(v) == Target::true_value ? "true" : "false";
    j["feasible"] = feasible_exact(b, d, claim_target(v)).feasible;
    emit(out, j);
  });
}

int slicelab_discmax_claims(int n, int d, char** out) {
  return guarded([&] { emit(out, claim_sweep_json(claims_sweep(n, d))); });
}

int slicelab_discmax_complete(const char* board, int d, const char* method, const char* order, char** out) {
  return guarded([&] {
    Board b = read_board(board);
    const std::string m = str(method, "method");
    CompletionMethod cm;
    if (m == "alternating") {
      cm = CompletionMethod::alternating;
    } else if (m == "even_interval") {
      cm = CompletionMethod::even_interval;
    } else {
      throw ParseError("unknown completion method '" + m + "' (alternating | even_interval)");
    }
    json j = completion_json(complete_constructive(b, d, cm, parse_order(order)));
    j["d"] = d;
    j["method"] = m;
    emit(out, j);
  });
}

int slicelab_discmax_E(int n, int d, int threads, char** out) {
  return guarded([&] {
    SolveOptions opts;
    opts.threads = threads_or_one(threads);
    DepthResult r = e_discmax(n, d, opts);
    json j;
    j["n"] = n;
    j["d"] = d;
    j["D"] = r.depth;
    j["E"] = r.co_depth;
    j["nodes_expanded"] = r.nodes_expanded;
    emit(out, j);
  });
}

int slicelab_discmax_remark(int d, int n, char** out) {
  return guarded([&] {
    Board b = remark_board(d, n);
    json j;
    j["d"] = d;
    j["n"] = n;
    j["board"] = b.to_string();
    j["max_prefix_disc"] = max_prefix_disc(b);
    j["bound"] = d / 2 + 1;
    j["feasible_true"] = feasible_exact(b, d, Target::true_value).feasible;
    emit(out, j);
  });
}

// ---- games -----------------------------------------------------------------

int slicelab_game_value(int n, const char* scoring, int threads, char** out) {
  return guarded([&] {
    GameSpec spec{n, parse_scoring(str(scoring, "scoring"))};
    GameOptions opts;
    opts.threads = threads_or_one(threads);
    GameResult r = game_value(spec, opts);
    json j;
    j["n"] = n;
    j["scoring"] = to_string(spec.scoring);
    j["value"] = half_json(r.value_doubled);
    j["value_doubled"] = r.value_doubled;
    j["states_expanded"] = r.states_expanded;
    j["principal_line"] = trace_json(r.principal_line);
    emit(out, j);
  });
}

int slicelab_game_exploit(const char* strategy, const char* role, int n, const char* scoring, char** out) {
  return guarded([&] {
    StrategyId id = parse_strategy(str(strategy, "strategy"));
    Role r = parse_role(str(role, "role"));
    GameSpec spec{n, parse_scoring(str(scoring, "scoring"))};
    const int v = exploit_doubled(id, r, spec);
    json j;
    j["n"] = n;
    j["scoring"] = to_string(spec.scoring);
    j["strategy"] = to_string(id);
    j["role"] = to_string(r);
    j["value"] = half_json(v);
    j["value_doubled"] = v;
    emit(out, j);
  });
}

int slicelab_game_play(const char* positioner, const char* signgiver, int n, const char* scoring, uint64_t seed,
                       char** out) {
  return guarded([&] {
    GameSpec spec{n, parse_scoring(str(scoring, "scoring"))};
    StrategyId p = parse_strategy(str(positioner, "positioner"));
    StrategyId s = parse_strategy(str(signgiver, "signgiver"));
    // Distinct streams for the two sides under one seed.
    MatchResult r = play_match(make_positioner(p, spec, seed), make_signgiver(s, spec, seed ^ 0x9e3779b97f4a7c15ULL),
                               spec);
    json j;
    j["n"] = n;
    j["scoring"] = to_string(spec.scoring);
    j["positioner"] = to_string(p);
    j["signgiver"] = to_string(s);
    j["seed"] = seed;
    j["moves"] = trace_json(r.trace);
    j["board"] = r.final_board.to_string();
    j["peak"] = half_json(r.trace.peak_doubled());
    j["peak_doubled"] = r.trace.peak_doubled();
    j["aborted"] = r.aborted;
    if (r.aborted) {
      j["abort_reason"] = r.abort_reason;
      j["offending"] = {{"position", r.offending->position}, {"sign", r.offending->sign}};
    }
    emit(out, j);
  });
}

int slicelab_strategy_move(const char* strategy, const char* board, int pending, int* out) {
  return guarded([&] {
    need(out, "out");
    Board b = read_board(board);
    StrategyId id = parse_strategy(str(strategy, "strategy"));
    if (id != StrategyId::signgiver_sqrt_blocks && id != StrategyId::positioner_bisection) {
      throw DomainError("strategy_move covers sqrt_blocks and bisection only");
    }
    if (pending > 0) {
      if (id != StrategyId::signgiver_sqrt_blocks) throw DomainError("bisection is a positioner strategy");
      *out = sqrt_blocks_sign(b, pending);
    } else {
      if (id != StrategyId::positioner_bisection) throw DomainError("sqrt_blocks is a signgiver strategy");
      *out = bisection_position(b);
    }
  });
}

int slicelab_game_corollary(int n, int threads, char** out) {
  return guarded([&] {
    GameOptions g;
    g.threads = threads_or_one(threads);
    SolveOptions s;
    s.threads = threads_or_one(threads);
    CorollaryReport r = corollary_pipeline(n, g, s);
    json j;
    j["n"] = r.n;
    j["d_n"] = r.d_n;
    j["d_prime"] = half_json(r.d_prime_doubled);
    j["prefix"] = {{"d", r.prefix_d}, {"E", r.prefix_E}, {"bound", 3 * r.prefix_d}, {"holds", r.prefix_holds}};
    j["interval"] = {{"d", half_json(r.interval_d_doubled)},
                     {"d_floor", r.interval_d_floor},
                     {"E", r.interval_E},
                     {"bound", half_json(6 * r.interval_d_doubled)},
                     {"holds", r.interval_holds}};
    emit(out, j);
  });
}

int slicelab_match_create(int n, const char* scoring, slicelab_match** out) {
  return guarded([&] {
    need(out, "out");
    *out = new slicelab_match{Match(GameSpec{n, parse_scoring(str(scoring, "scoring"))}), std::nullopt, {}, {}};
  });
}

void slicelab_match_free(slicelab_match* m) { delete m; }

int slicelab_match_set_opponent(slicelab_match* m, const char* role, const char* strategy, uint64_t seed) {
  return guarded([&] {
    need(m, "match");
    Role r = parse_role(str(role, "role"));
    StrategyId id = parse_strategy(str(strategy, "strategy"));
    if (r == Role::positioner) {
      m->positioner = make_positioner(id, m->match.spec(), seed);
      m->signgiver = nullptr;
    } else {
      m->signgiver = make_signgiver(id, m->match.spec(), seed);
      m->positioner = nullptr;
    }
    m->opponent_role = r;
  });
}

int slicelab_match_opponent_position(slicelab_match* m, int* out) {
  return guarded([&] {
    need(m, "match");
    need(out, "out");
    if (!m->positioner) throw DomainError("no positioner opponent set");
    if (m->match.finished()) throw DomainError("match is over");
    *out = m->positioner(m->match.board());
  });
}

int slicelab_match_opponent_sign(slicelab_match* m, int position, int* out) {
  return guarded([&] {
    need(m, "match");
    need(out, "out");
    if (!m->signgiver) throw DomainError("no signgiver opponent set");
    if (auto why = m->match.check(position, 1)) throw DomainError(*why);
    *out = m->signgiver(m->match.board(), position);
  });
}

int slicelab_match_check(const slicelab_match* m, int position, int sign) {
  return guarded([&] {
    need(m, "match");
    if (auto why = m->match.check(position, sign)) throw DomainError(*why);
  });
}

int slicelab_match_apply(slicelab_match* m, int position, int sign) {
  return guarded([&] {
    need(m, "match");
    m->match.apply(position, sign);
  });
}

int slicelab_match_finished(const slicelab_match* m, int* out) {
  return guarded([&] {
    need(m, "match");
    need(out, "out");
    *out = m->match.finished() ? 1 : 0;
  });
}

int slicelab_match_peak_doubled(const slicelab_match* m, int* out) {
  return guarded([&] {
    need(m, "match");
    need(out, "out");
    *out = m->match.trace().peak_doubled();
  });
}

int slicelab_match_board(const slicelab_match* m, char** out) {
  return guarded([&] {
    need(m, "match");
    need(out, "out");
    *out = dup(m->match.board().to_string());
  });
}

int slicelab_match_trace(const slicelab_match* m, char** out) {
  return guarded([&] {
    need(m, "match");
    need(out, "out");
    *out = dup(m->match.trace().to_json_lines());
  });
}

// ---- sweeps ----------------------------------------------------------------

int slicelab_sweep_kozep_csv(int t, int n_lo, int n_hi, int threads, char** out) {
  return guarded([&] {
    need(out, "out");
    KozepReport r = verify_kozep_range(t, n_lo, n_hi, {}, threads_or_one(threads));
    std::string csv = "n,t,ratio_hi\n";
    for (const KozepRow& row : r.rows) {
      csv += std::to_string(row.n) + "," + std::to_string(t) + "," + hi_str(row.ratio.hi) + "\n";
    }
    *out = dup(csv);
  });
}

int slicelab_sweep_E(int n_max, int d_max, uint64_t seed, int samples, int threads, char** out) {
  return guarded([&] {
    if (n_max < 2 || d_max < 1 || samples < 0) throw DomainError("sweep needs n_max >= 2, d_max >= 1, samples >= 0");
    SolveOptions opts;
    opts.threads = threads_or_one(threads);
    json table = json::array();
    for (int n = 2; n <= n_max; n += 2) {
      for (int d = 1; d <= d_max; ++d) {
        DepthResult r = e_discmax(n, d, opts);
        table.push_back({{"n", n}, {"d", d}, {"D", r.depth}, {"E", r.co_depth}});
      }
    }
    // Uniform boards over {-1,0,+1}^n kept only when slice-consistent.
    const int n = n_max % 2 == 0 ? n_max : n_max - 1;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cell(-1, 1);
    std::uint64_t hyp[4] = {0, 0, 0, 0}, sound[4] = {0, 0, 0, 0};
    json findings = json::array();
    for (int drawn = 0; drawn < samples;) {
      Board b(n);
      for (int i = 1; i <= n; ++i) b.set(i, cell(rng));
      if (!b.slice_consistent()) continue;
      ++drawn;
      for (int d = 1; d <= d_max; ++d) {
        for (int v = 0; v < 4; ++v) {
          auto cv = static_cast<ClaimVariant>(v);
          if (!claim_condition(b, d, cv)) continue;
          ++hyp[v];
          if (feasible_exact(b, d, claim_target(cv)).feasible) {
            ++sound[v];
          } else {
            findings.push_back({{"variant", to_string(cv)}, {"d", d}, {"board", b.to_string()}});
          }
        }
      }
    }
    json sampled = json::object();
    for (int v = 0; v < 4; ++v) {
      sampled[to_string(static_cast<ClaimVariant>(v))] = {{"hypothesis_true", hyp[v]}, {"sound", sound[v]}};
    }
    json j;
    j["seed"] = seed;
    j["E_table"] = table;
    j["claim_samples"] = {{"n", n}, {"boards", samples}, {"variants", sampled}, {"findings", findings}};
    emit(out, j);
  });
}

}  // extern "C"
