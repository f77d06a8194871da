#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include "ichomp/catalog.hpp"
#include "ichomp/game.hpp"
#include "ichomp/http.hpp"
#include "ichomp/serialize.hpp"
#include "ichomp/service.hpp"
#include "ichomp/verify.hpp"

namespace {

using namespace ichomp;

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

std::string dvec(const std::vector<std::size_t>& d) {
  std::vector<std::string> parts;
  for (auto x : d) parts.push_back(std::to_string(x));
  return "(" + join(parts, ",") + ")";
}

std::vector<std::uint32_t> parse_fields(const std::string& list) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw Error(ErrorCode::InvalidArgument, "bad field list entry '" + item + "'");
    if (!PrimeField::is_prime(static_cast<std::uint32_t>(v))) {
      throw Error(ErrorCode::NotPrime, item + " is not prime");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty field list");
  return out;
}

void print_entry_row(const CatalogEntry& e) {
  std::cout << std::left << std::setw(9) << e.id << std::setw(3) << e.n << std::setw(11) << dvec(e.d)
            << std::setw(5) << to_string(e.char_constraint) << std::setw(4) << to_string(e.expected_winner)
            << e.presentation << "\n";
}

int cmd_catalog_list(const Catalog& cat, std::optional<std::uint32_t> p, bool as_json) {
  if (p && !PrimeField::is_prime(*p)) throw Error(ErrorCode::NotPrime, std::to_string(*p) + " is not prime");
  const auto entries = p ? cat.entries_for(*p) : cat.all_entries();
  if (as_json) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : entries) out.push_back(to_json(e));
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  std::cout << std::left << std::setw(9) << "id" << std::setw(3) << "n" << std::setw(11) << "d" << std::setw(5)
            << "char" << std::setw(4) << "win"
            << "presentation\n";
  for (const auto& e : entries) print_entry_row(e);
  return 0;
}

int cmd_catalog_show(const Catalog& cat, const std::string& id, bool as_json) {
  const auto& e = cat.at(id);
  if (as_json) {
    std::cout << to_json(e).dump(2) << "\n";
    return 0;
  }
  std::cout << "id: " << e.id << "\n"
            << "n: " << e.n << "\n"
            << "d: " << dvec(e.d) << "\n"
            << "presentation: " << e.presentation << "\n"
            << "generators: " << join(e.gens, ", ") << "\n"
            << "char: " << to_string(e.char_constraint) << "\n"
            << "win: " << to_string(e.expected_winner) << "\n";
  return 0;
}

int cmd_solve(const Catalog& cat, const std::string& ring, std::uint32_t p, bool quotient_form, bool as_json) {
  const auto resolved = resolve_ring(cat, ring, PrimeField(p));
  const auto report = quotient_form ? solve_quotient_form(resolved.algebra, resolved.id)
                                    : solve(resolved.algebra, resolved.id);
  if (as_json) {
    std::cout << to_json(report).dump(2) << "\n";
    return 0;
  }
  std::cout << "ring: " << report.ring_id << " over F_" << report.field << "\n"
            << "rank: " << resolved.algebra.rank() << "\n"
            << "winner: " << to_string(report.winner) << "\n"
            << "winning first moves: "
            << (report.winning_first_move_strings.empty() ? "none" : join(report.winning_first_move_strings, ", "))
            << "\n"
            << "states: " << report.states << "\n"
            << "transitions: " << report.transitions << "\n"
            << "time: " << std::fixed << std::setprecision(1) << report.ms << " ms\n";
  return 0;
}

int cmd_verify(const Catalog& cat, const std::string& suite, const std::string& fields, bool as_json, bool quiet) {
  const auto primes = parse_fields(fields);
  const auto results = run_suite(suite, cat, primes);
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t undecided = 0;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    if (r.status == VerifyStatus::Pass) ++pass;
    if (r.status == VerifyStatus::Fail) ++fail;
    if (r.status == VerifyStatus::Undecided) ++undecided;
    if (as_json) {
      arr.push_back({{"id", r.id}, {"status", to_string(r.status)}, {"details", r.details}});
    } else if (!quiet || r.status != VerifyStatus::Pass) {
      std::cout << std::left << std::setw(10) << to_string(r.status) << r.id
                << (r.details.empty() ? "" : "  " + r.details) << "\n";
    }
  }
  if (as_json) {
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << "summary: " << pass << " pass, " << fail << " fail, " << undecided << " undecided\n";
  }
  return fail == 0 && undecided == 0 ? 0 : 1;
}

void print_position(const PlaySession& s) {
  const auto I = s.current_ideal();
  const auto basis = render_basis(s.algebra(), I);
  std::cout << "ideal: (" << (basis.empty() ? "0" : join(basis, ", ")) << ")  quotient rank "
            << s.algebra().rank() - I.dim() << "\n";
}

void write_transcript(const PlaySession& s, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << transcript_json(s).dump(2) << "\n";
}

int cmd_play(const Catalog& cat, const std::string& ring, std::uint32_t p, const std::string& side,
             const std::string& transcript_path) {
  std::optional<Player> engine;
  if (side == "A") {
    engine = Player::A;
  } else if (side == "B") {
    engine = Player::B;
  } else if (side != "none") {
    throw Error(ErrorCode::InvalidArgument, "engine side must be A, B or none");
  }
  auto resolved = resolve_ring(cat, ring, PrimeField(p));
  auto solver = std::make_shared<Solver>(std::move(resolved.algebra));
  PlaySession s(solver, engine, resolved.id);
  const auto& A = s.algebra();
  std::cout << resolved.id << " over F_" << p << ": " << A.description() << "\n"
            << "basis: " << join(A.labels(), ", ") << "\n"
            << "commands: a polynomial move, 'hint', 'show', 'transcript', 'quit'\n";
  print_position(s);

  std::string line;
  while (!s.over()) {
    if (s.engine_to_move()) {
      const auto m = s.best_move();
      s.apply_element(m.element, m.text);
      std::cout << "engine (" << to_string(s.history().back().player) << ") plays " << m.text
                << (m.resign ? "  (every move loses)" : "") << "\n";
      print_position(s);
      continue;
    }
    std::cout << to_string(s.turn()) << "> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (line == "quit" || line == "exit") break;
    if (line == "show") {
      print_position(s);
      continue;
    }
    if (line == "transcript") {
      std::cout << transcript_json(s).dump(2) << "\n";
      continue;
    }
    if (line == "hint") {
      const auto h = s.hint();
      std::cout << (h ? "winning move: " + A.render(*h) : std::string("position lost")) << "\n";
      continue;
    }
    const auto c = s.check(line);
    if (!c.legal) {
      std::cout << "illegal: " << c.message << "\n";
      continue;
    }
    if (c.immediate_loss) {
      std::cout << "warning: " << c.message << ". play it anyway? [y/N] " << std::flush;
      std::string answer;
      if (!std::getline(std::cin, answer)) break;
      if (answer != "y" && answer != "Y" && answer != "yes") continue;
    }
    s.apply_move(line);
    print_position(s);
  }
  if (s.over()) std::cout << "game over: " << to_string(*s.loser()) << " made the ideal the whole ring, "
                          << to_string(*s.winner()) << " wins\n";
  write_transcript(s, transcript_path);
  return 0;
}

int cmd_serve(const Catalog& cat, const std::string& host, int port, const std::string& snapshot_dir) {
  GameService service(cat, snapshot_dir.empty() ? std::nullopt
                                                : std::optional<std::filesystem::path>(snapshot_dir));
  httplib::Server server;
  register_routes(server, service);
  std::cout << "listening on " << host << ":" << port << std::endl;
  if (!server.listen(host, port)) throw Error(ErrorCode::Io, "cannot listen on port " + std::to_string(port));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ideal Chomp Game engine"};
  app.require_subcommand(1);
  std::string catalog_path = default_catalog_path();
  app.add_option("--catalog", catalog_path, "catalog JSON file");

  auto* catalog = app.add_subcommand("catalog", "list or show catalog algebras");
  catalog->require_subcommand(1);
  auto* list = catalog->add_subcommand("list", "list entries");
  std::optional<std::uint32_t> list_char;
  bool list_json = false;
  list->add_option("--char", list_char, "only entries valid in this characteristic");
  list->add_flag("--json", list_json);
  auto* show = catalog->add_subcommand("show", "show one entry");
  std::string show_id;
  bool show_json = false;
  show->add_option("id", show_id)->required();
  show->add_flag("--json", show_json);

  auto* solve_cmd = app.add_subcommand("solve", "solve a ring exhaustively");
  std::string ring;
  std::uint32_t field = 2;
  bool quotient_form = false;
  bool solve_json = false;
  solve_cmd->add_option("--ring", ring, "catalog id or presentation such as K[x]/(x^2)")->required();
  solve_cmd->add_option("--field", field, "prime p of F_p");
  solve_cmd->add_flag("--quotient-form", quotient_form, "use the quotient formulation");
  solve_cmd->add_flag("--json", solve_json);

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  std::string fields = "2,3";
  bool verify_json = false;
  bool quiet = false;
  verify_cmd->add_option("--suite", suite, "all | " + join(suite_names(), " | "));
  verify_cmd->add_option("--field", fields, "comma-separated primes");
  verify_cmd->add_flag("--json", verify_json);
  verify_cmd->add_flag("--quiet", quiet, "print only non-passing outcomes");

  auto* play = app.add_subcommand("play", "play interactively in the terminal");
  std::string play_ring;
  std::uint32_t play_field = 2;
  std::string engine_side = "B";
  std::string transcript;
  play->add_option("--ring", play_ring)->required();
  play->add_option("--field", play_field);
  play->add_option("--engine-side", engine_side, "A | B | none");
  play->add_option("--transcript", transcript, "write the JSON transcript here");

  auto* serve = app.add_subcommand("serve", "run the JSON API");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string snapshot_dir;
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--snapshot-dir", snapshot_dir, "write each game's transcript here after every move");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto cat = Catalog::load(catalog_path);
    if (list->parsed()) return cmd_catalog_list(cat, list_char, list_json);
    if (show->parsed()) return cmd_catalog_show(cat, show_id, show_json);
    if (solve_cmd->parsed()) return cmd_solve(cat, ring, field, quotient_form, solve_json);
    if (verify_cmd->parsed()) return cmd_verify(cat, suite, fields, verify_json, quiet);
    if (play->parsed()) return cmd_play(cat, play_ring, play_field, engine_side, transcript);
    if (serve->parsed()) return cmd_serve(cat, host, port, snapshot_dir);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
