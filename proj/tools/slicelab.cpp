// slicelab command-line front end. Talks to the library only through the C
// API; every JSON payload is printed exactly as the library returns it.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slicelab/slicelab.h"

using json = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

struct CliFailure {
  int code;
};

int exit_for_status(int status) {
  switch (status) {
    case SLICELAB_OK: return kOk;
    case SLICELAB_ERR_RESOURCE: return kResource;
    case SLICELAB_ERR_INTERNAL: return kVerifyFailed;
    default: return kUsage;
  }
}

void check(int status) {
  if (status == SLICELAB_OK) return;
  std::cerr << "error (" << slicelab_status_name(status) << "): " << slicelab_last_error() << "\n";
  throw CliFailure{exit_for_status(status)};
}

std::string take(char* s) {
  std::string out(s ? s : "");
  slicelab_string_free(s);
  return out;
}

struct FunctionHandle {
  slicelab_function* f = nullptr;
  ~FunctionHandle() { slicelab_function_free(f); }
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out,
             std::vector<std::pair<std::string, const json*>>& tables) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, out, tables);
    } else if (it->is_array() && !it->empty() && it->front().is_object()) {
      tables.emplace_back(key, &*it);
    } else {
      out.emplace_back(key, scalar_text(*it));
    }
  }
}

void print_rows(const json& rows, std::ostream& os, char sep, bool pad) {
  std::vector<std::string> cols;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
    if (!it->is_structured()) cols.push_back(it.key());
  }
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    width[c] = cols[c].size();
    if (pad) {
      for (const json& r : rows) width[c] = std::max(width[c], scalar_text(r.value(cols[c], json())).size());
    }
  }
  auto line = [&](auto cell) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::string s = cell(c);
      if (c) os << sep;
      os << s;
      if (pad && c + 1 < cols.size()) os << std::string(width[c] - s.size(), ' ');
    }
    os << "\n";
  };
  line([&](std::size_t c) { return cols[c]; });
  for (const json& r : rows) line([&](std::size_t c) { return scalar_text(r.value(cols[c], json())); });
}

void render_table(const std::string& payload) {
  json j = json::parse(payload);
  std::vector<std::pair<std::string, std::string>> kv;
  std::vector<std::pair<std::string, const json*>> tables;
  flatten(j, "", kv, tables);
  std::size_t w = 0;
  for (auto& [k, v] : kv) w = std::max(w, k.size());
  for (auto& [k, v] : kv) std::cout << k << std::string(w - k.size() + 2, ' ') << v << "\n";
  for (auto& [k, rows] : tables) {
    std::cout << "\n[" << k << "]\n";
    print_rows(*rows, std::cout, ' ', true);
  }
}

// CSV of the first array of row objects in the payload.
bool render_csv(const std::string& payload) {
  json j = json::parse(payload);
  std::vector<std::pair<std::string, std::string>> kv;
  std::vector<std::pair<std::string, const json*>> tables;
  flatten(j, "", kv, tables);
  if (tables.empty()) return false;
  print_rows(*tables.front().second, std::cout, ',', false);
  return true;
}

struct Common {
  std::string format = "json";
  int threads = 1;
};

void print_payload(const std::string& payload, const Common& c) {
  if (c.format == "json") {
    std::cout << payload << "\n";
  } else if (c.format == "table") {
    render_table(payload);
  } else if (c.format == "csv") {
    if (!render_csv(payload)) {
      std::cerr << "error: no tabular data for csv output; use json or table\n";
      throw CliFailure{kUsage};
    }
  } else {
    std::cerr << "error: format '" << c.format << "' is not available for this command\n";
    throw CliFailure{kUsage};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << "\n";
    throw CliFailure{kUsage};
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool parse_target(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  std::cerr << "error: target must be true or false\n";
  throw CliFailure{kUsage};
}

// ---- interactive play ------------------------------------------------------

struct MatchHandle {
  slicelab_match* m = nullptr;
  ~MatchHandle() { slicelab_match_free(m); }
};

std::optional<std::string> next_token(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) return std::nullopt;
  return tok;
}

std::optional<int> parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

std::optional<int> parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return 1;
  if (s == "-" || s == "-1") return -1;
  return std::nullopt;
}

std::string peak_text(int doubled) {
  return doubled % 2 == 0 ? std::to_string(doubled / 2) : std::to_string(doubled / 2) + ".5";
}

int interactive(int n, const std::string& scoring, const std::string& human, const std::string& opponent,
                std::uint64_t seed, const std::string& save) {
  if (human != "positioner" && human != "signgiver") {
    std::cerr << "error: --role must be positioner or signgiver\n";
    return kUsage;
  }
  MatchHandle mh;
  check(slicelab_match_create(n, scoring.c_str(), &mh.m));
  const std::string opp_role = human == "positioner" ? "signgiver" : "positioner";
  check(slicelab_match_set_opponent(mh.m, opp_role.c_str(), opponent.c_str(), seed));

  auto show = [&] {
    int peak = 0;
    check(slicelab_match_peak_doubled(mh.m, &peak));
    char* b = nullptr;
    check(slicelab_match_board(mh.m, &b));
    std::cout << "board " << take(b) << "  peak " << peak_text(peak) << "\n";
  };

  bool aborted = false;
  show();
  int done = 0;
  while (check(slicelab_match_finished(mh.m, &done)), !done) {
    int pos = 0, sign = 0;
    if (human == "positioner") {
      for (;;) {
        std::cout << "position> " << std::flush;
        auto tok = next_token(std::cin);
        if (!tok) {
          aborted = true;
          break;
        }
        auto v = parse_int(*tok);
        if (!v) {
          std::cout << "illegal: '" << *tok << "' is not a position\n";
          continue;
        }
        if (slicelab_match_check(mh.m, *v, 1) != SLICELAB_OK) {
          std::cout << "illegal: " << slicelab_last_error() << "\n";
          continue;
        }
        pos = *v;
        break;
      }
      if (aborted) break;
      check(slicelab_match_opponent_sign(mh.m, pos, &sign));
    } else {
      check(slicelab_match_opponent_position(mh.m, &pos));
      for (;;) {
        std::cout << "sign for position " << pos << " (+/-)> " << std::flush;
        auto tok = next_token(std::cin);
        if (!tok) {
          aborted = true;
          break;
        }
        auto v = parse_sign(*tok);
        if (!v) {
          std::cout << "illegal: '" << *tok << "' is not a sign\n";
          continue;
        }
        sign = *v;
        break;
      }
      if (aborted) break;
    }
    check(slicelab_match_apply(mh.m, pos, sign));
    std::cout << "move " << pos << " " << (sign > 0 ? "+" : "-") << "\n";
    show();
  }

  char* t = nullptr;
  check(slicelab_match_trace(mh.m, &t));
  const std::string trace = take(t);
  if (aborted) std::cout << "aborted: end of input\n";
  std::cout << trace;
  if (!save.empty()) {
    std::ofstream outf(save);
    if (!outf) {
      std::cerr << "error: cannot write " << save << "\n";
      return kUsage;
    }
    outf << trace;
  }
  return kOk;
}

int default_threads() {
  if (const char* env = std::getenv("SLICELAB_THREADS")) {
    if (auto v = parse_int(env); v && *v >= 1) return *v;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slicelab: query complexity on slices and discrepancy games"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(slicelab_version()));
  Common common;
  common.threads = default_threads();
  app.add_option("--threads", common.threads, "worker threads (default $SLICELAB_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", common.format, "json | csv | table | dot")
      ->check(CLI::IsMember({"json", "csv", "table", "dot"}));

  int result = kOk;
  std::function<void()> action;

  // solve
  auto* solve = app.add_subcommand("solve", "exact D and E of a slice function");
  std::string table_file, table_text;
  bool want_tree = false;
  solve->add_option("--table-file", table_file, "slice text or JSON file");
  solve->add_option("--table", table_text, "slice text or JSON inline");
  solve->add_flag("--tree", want_tree, "include an optimal decision tree");
  solve->callback([&] {
    action = [&] {
      if (table_file.empty() == table_text.empty()) {
        std::cerr << "error: give exactly one of --table-file, --table\n";
        throw CliFailure{kUsage};
      }
      FunctionHandle fh;
      check(table_file.empty() ? slicelab_function_parse(table_text.c_str(), &fh.f)
                               : slicelab_function_load(table_file.c_str(), &fh.f));
      char* out = nullptr;
      if (common.format == "dot") {
        check(slicelab_solve_dot(fh.f, common.threads, &out));
        std::cout << take(out);
        return;
      }
      check(slicelab_solve(fh.f, want_tree ? 1 : 0, common.threads, &out));
      print_payload(take(out), common);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "check a decision tree against a slice function");
  std::string verify_table, verify_tree_file;
  verify->add_option("--table-file", verify_table)->required();
  verify->add_option("--tree-file", verify_tree_file, "JSON tree")->required();
  verify->callback([&] {
    action = [&] {
      FunctionHandle fh;
      check(slicelab_function_load(verify_table.c_str(), &fh.f));
      const std::string tree = read_file(verify_tree_file);
      char* out = nullptr;
      check(slicelab_verify_tree(fh.f, tree.c_str(), &out));
      const std::string payload = take(out);
      print_payload(payload, common);
      if (!json::parse(payload)["valid"].get<bool>()) result = kVerifyFailed;
    };
  });

  // maxdepth
  auto* maxdepth = app.add_subcommand("maxdepth", "D_k(n) over every table function");
  int md_n = 0, md_k = 0;
  maxdepth->add_option("--n", md_n)->required();
  maxdepth->add_option("--k", md_k)->required();
  maxdepth->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_maxdepth(md_n, md_k, common.threads, &out));
      print_payload(take(out), common);
    };
  });

  // compose
  auto* comp = app.add_subcommand("compose", "block composition of two slice functions");
  std::string f1_file, f2_file;
  comp->add_option("--f1", f1_file, "first component file")->required();
  comp->add_option("--f2", f2_file, "second component file")->required();
  comp->callback([&] {
    action = [&] {
      FunctionHandle a, b, c;
      check(slicelab_function_load(f1_file.c_str(), &a.f));
      check(slicelab_function_load(f2_file.c_str(), &b.f));
      check(slicelab_function_compose(a.f, b.f, &c.f));
      char* out = nullptr;
      check(slicelab_function_json(c.f, &out));
      print_payload(take(out), common);
    };
  });

  // census
  auto* census = app.add_subcommand("census", "count decision trees of bounded height");
  int ce_n = 0, ce_k = 0, ce_h = 0;
  std::string ce_mode = "padded";
  census->add_option("--n", ce_n)->required();
  census->add_option("--k", ce_k)->required();
  census->add_option("--hmax", ce_h)->required();
  census->add_option("--mode", ce_mode)->check(CLI::IsMember({"padded", "early_leaves"}));
  census->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_census(ce_n, ce_k, ce_h, ce_mode == "padded" ? 0 : 1, &out));
      print_payload(take(out), common);
    };
  });

  // bounds
  auto* bounds = app.add_subcommand("bounds", "counting bounds");
  bounds->require_subcommand(1);
  int b_n = 0, b_k = 0, b_t = 0, b_bits = 256, b_from = 0, b_to = 0, b_C = 0;
  std::string b_alpha;
  bool b_chain = false;

  auto* bg = bounds->add_subcommand("g", "the tree-count bound g(n,k,t)");
  bg->add_option("--n", b_n)->required();
  bg->add_option("--k", b_k)->required();
  bg->add_option("--t", b_t)->required();
  bg->add_option("--bits", b_bits);
  bg->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_bounds_g(b_n, b_k, b_t, b_bits, &out));
      print_payload(take(out), common);
    };
  });

  auto* bk = bounds->add_subcommand("kozep", "certify f(n,t) < 1 over a range of n");
  bk->add_option("--t", b_t);
  bk->add_option("--from", b_from);
  bk->add_option("--to", b_to);
  bk->add_flag("--chain", b_chain, "evaluate the three-stage chain instead");
  bk->add_option("--bits", b_bits, "precision for --chain");
  bk->callback([&] {
    action = [&] {
      char* out = nullptr;
      if (b_chain) {
        check(slicelab_bounds_kozep_chain(b_bits, &out));
        const std::string payload = take(out);
        print_payload(payload, common);
        json j = json::parse(payload);
        if (!j["first_below_0.2"].get<bool>() || !j["middle_below_0.71"].get<bool>() ||
            !j["stated_total_below_0.92"].get<bool>()) {
          result = kVerifyFailed;
        }
        return;
      }
      if (common.format == "csv") {
        check(slicelab_sweep_kozep_csv(b_t, b_from, b_to, common.threads, &out));
        const std::string csv = take(out);
        std::cout << csv;
        char* again = nullptr;
        check(slicelab_bounds_kozep(b_t, b_from, b_to, common.threads, &again));
        if (!json::parse(take(again))["all_certified"].get<bool>()) result = kVerifyFailed;
        return;
      }
      check(slicelab_bounds_kozep(b_t, b_from, b_to, common.threads, &out));
      const std::string payload = take(out);
      print_payload(payload, common);
      if (!json::parse(payload)["all_certified"].get<bool>()) result = kVerifyFailed;
    };
  });

  auto* ba = bounds->add_subcommand("alfa", "finite log-binomial inequality at (alpha, C, n)");
  ba->add_option("--alpha", b_alpha, "rational p/q in (0, 1/2)")->required();
  ba->add_option("--C", b_C)->required();
  ba->add_option("--n", b_n)->required();
  ba->add_option("--bits", b_bits);
  ba->callback([&] {
    action = [&] {
      long num = 0, den = 1;
      if (std::sscanf(b_alpha.c_str(), "%ld/%ld", &num, &den) != 2) {
        std::cerr << "error: --alpha must look like p/q\n";
        throw CliFailure{kUsage};
      }
      char* out = nullptr;
      check(slicelab_bounds_alfa(num, den, b_C, b_n, b_bits, &out));
      const std::string payload = take(out);
      print_payload(payload, common);
      if (json::parse(payload)["verdict"] != "holds") result = kVerifyFailed;
    };
  });

  auto* bc = bounds->add_subcommand("certify", "smallest t with g(n,k,t) < 2^binom(n,k)");
  std::optional<int> bc_k;
  bc->add_option("--n", b_n)->required();
  bc->add_option("--k", bc_k, "default floor(n/2)");
  bc->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_bounds_certify(b_n, bc_k.value_or(b_n / 2), &out));
      const std::string payload = take(out);
      print_payload(payload, common);
      if (json::parse(payload)["verdict"] != "certified") result = kVerifyFailed;
    };
  });

  // discmax
  auto* dm = app.add_subcommand("discmax", "the Disc-max-d family");
  dm->require_subcommand(1);
  std::string d_board, d_target = "true", d_variant, d_method, d_order;
  int d_d = 0, d_n = 0;

  auto* de = dm->add_subcommand("eval", "evaluate on a complete board");
  de->add_option("--board", d_board)->required();
  de->add_option("--d", d_d)->required();
  de->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_discmax_eval(d_board.c_str(), d_d, &out));
      print_payload(take(out), common);
    };
  });

  auto* df = dm->add_subcommand("feasible", "exact balanced-completion oracle");
  df->add_option("--board", d_board)->required();
  df->add_option("--d", d_d)->required();
  df->add_option("--target", d_target, "true | false");
  df->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_discmax_feasible(d_board.c_str(), d_d, parse_target(d_target) ? 1 : 0, &out));
      print_payload(take(out), common);
    };
  });

  auto* dc = dm->add_subcommand("claims", "claim hypotheses against the exact oracle");
  dc->add_option("--n", d_n, "sweep every board of this length");
  dc->add_option("--board", d_board, "check a single board");
  dc->add_option("--variant", d_variant, "i | ii | i_prime | ii_prime (with --board)");
  dc->add_option("--d", d_d)->required();
  dc->callback([&] {
    action = [&] {
      char* out = nullptr;
      if (!d_board.empty()) {
        if (d_variant.empty()) {
          std::cerr << "error: --board needs --variant\n";
          throw CliFailure{kUsage};
        }
        check(slicelab_discmax_claim(d_board.c_str(), d_d, d_variant.c_str(), &out));
        const std::string payload = take(out);
        print_payload(payload, common);
        json j = json::parse(payload);
        if (j["hypothesis"].get<bool>() && !j["feasible"].get<bool>()) result = kVerifyFailed;
        return;
      }
      check(slicelab_discmax_claims(d_n, d_d, &out));
      const std::string payload = take(out);
      print_payload(payload, common);
      json j = json::parse(payload);
      for (const char* v : {"i", "ii"}) {
        if (j["variants"][v]["unsound"].get<std::uint64_t>() != 0) result = kVerifyFailed;
      }
    };
  });

  auto* dk = dm->add_subcommand("complete", "constructive completion from a claim proof");
  dk->add_option("--board", d_board)->required();
  dk->add_option("--d", d_d)->required();
  dk->add_option("--method", d_method, "alternating | even_interval")->required();
  dk->add_option("--order", d_order, "comma-separated positions (even_interval)");
  dk->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_discmax_complete(d_board.c_str(), d_d, d_method.c_str(),
                                      d_order.empty() ? nullptr : d_order.c_str(), &out));
      print_payload(take(out), common);
    };
  });

  auto* dE = dm->add_subcommand("E", "exact E_{n/2}(Disc-max-d)");
  dE->add_option("--n", d_n)->required();
  dE->add_option("--d", d_d)->required();
  dE->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_discmax_E(d_n, d_d, common.threads, &out));
      print_payload(take(out), common);
    };
  });

  auto* dr = dm->add_subcommand("remark", "the tightness board for hypothesis i");
  dr->add_option("--d", d_d)->required();
  dr->add_option("--n", d_n)->required();
  dr->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_discmax_remark(d_d, d_n, &out));
      print_payload(take(out), common);
    };
  });

  // game
  auto* game = app.add_subcommand("game", "Positioner/Signgiver games");
  game->require_subcommand(1);
  int g_n = 0;
  std::string g_scoring = "prefix", g_strategy, g_role, g_pos = "bisection", g_sign = "sqrt_blocks", g_opp, g_save;
  std::uint64_t g_seed = 0;
  bool g_trace = false;
  auto scoring_opt = [&](CLI::App* sc) {
    sc->add_option("--scoring", g_scoring, "prefix | interval")
        ->check(CLI::IsMember({"prefix", "interval", "prefix_max", "interval_minus_half_unq"}));
  };

  auto* gv = game->add_subcommand("value", "exact game value");
  gv->add_option("--n", g_n)->required();
  scoring_opt(gv);
  gv->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_game_value(g_n, g_scoring.c_str(), common.threads, &out));
      print_payload(take(out), common);
    };
  });

  auto* gx = game->add_subcommand("exploit", "value against a fixed strategy");
  gx->add_option("--strategy", g_strategy)->required();
  gx->add_option("--role", g_role, "side played by the strategy")->required();
  gx->add_option("--n", g_n)->required();
  scoring_opt(gx);
  gx->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_game_exploit(g_strategy.c_str(), g_role.c_str(), g_n, g_scoring.c_str(), &out));
      print_payload(take(out), common);
    };
  });

  auto* gp = game->add_subcommand("play", "play two strategies against each other");
  gp->add_option("--positioner", g_pos);
  gp->add_option("--signgiver", g_sign);
  gp->add_option("--n", g_n)->required();
  gp->add_option("--seed", g_seed);
  gp->add_flag("--trace", g_trace, "print the trace as JSON lines");
  scoring_opt(gp);
  gp->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_game_play(g_pos.c_str(), g_sign.c_str(), g_n, g_scoring.c_str(), g_seed, &out));
      const std::string payload = take(out);
      json j = json::parse(payload);
      if (g_trace) {
        for (const json& m : j["moves"]) {
          json line;
          line["move"] = m["move"];
          line["position"] = m["position"];
          line["sign"] = m["sign"];
          const int pd = m["peak_doubled"].get<int>();
          line["peak"] = pd % 2 == 0 ? json(pd / 2) : json(pd / 2.0);
          std::cout << line.dump() << "\n";
        }
      } else {
        print_payload(payload, common);
      }
      if (j["aborted"].get<bool>()) result = kVerifyFailed;
    };
  });

  auto* gi = game->add_subcommand("interactive", "play against a strategy from the terminal");
  gi->add_option("--n", g_n)->required();
  gi->add_option("--role", g_role, "your side: positioner | signgiver")->required();
  gi->add_option("--opponent", g_opp, "opponent strategy")->required();
  gi->add_option("--seed", g_seed);
  gi->add_option("--save", g_save, "write the trace here");
  scoring_opt(gi);
  gi->callback([&] { action = [&] { result = interactive(g_n, g_scoring, g_role, g_opp, g_seed, g_save); }; });

  auto* gc = game->add_subcommand("corollary", "E bounds at d = 2d(n) and d = d'(n)+3");
  gc->add_option("--n", g_n)->required();
  gc->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_game_corollary(g_n, common.threads, &out));
      const std::string payload = take(out);
      print_payload(payload, common);
      json j = json::parse(payload);
      if (!j["prefix"]["holds"].get<bool>() || !j["interval"]["holds"].get<bool>()) result = kVerifyFailed;
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "batch tables");
  sweep->require_subcommand(1);
  int s_t = 7, s_from = 7, s_to = 99, s_nmax = 12, s_dmax = 4, s_samples = 1000;
  std::uint64_t s_seed = 1;
  auto* sk = sweep->add_subcommand("kozep", "f(n,t) upper ends as CSV");
  sk->add_option("--t", s_t);
  sk->add_option("--from", s_from);
  sk->add_option("--to", s_to);
  sk->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_sweep_kozep_csv(s_t, s_from, s_to, common.threads, &out));
      std::cout << take(out);
    };
  });
  auto* se = sweep->add_subcommand("E", "E table for Disc-max and sampled claim checks");
  se->add_option("--n-max", s_nmax);
  se->add_option("--d-max", s_dmax);
  se->add_option("--seed", s_seed);
  se->add_option("--samples", s_samples);
  se->callback([&] {
    action = [&] {
      char* out = nullptr;
      check(slicelab_sweep_E(s_nmax, s_dmax, s_seed, s_samples, common.threads, &out));
      const std::string payload = take(out);
      print_payload(payload, common);
      for (const json& f : json::parse(payload)["claim_samples"]["findings"]) {
        if (f["variant"] == "i" || f["variant"] == "ii") result = kVerifyFailed;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    if (action) action();
  } catch (const CliFailure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return result;
}
