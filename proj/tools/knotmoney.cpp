// knotmoney: command-line front end for minting, verifying and probing
// knot-based money bills.
//
// Exit codes: 0 accept / success, 1 reject, 2 malformed input or bad
// arguments, 3 capacity exceeded.

#include <CLI11.hpp>
#include <climits>
#include <fstream>
#include <iostream>
#include <sstream>

#include "knotmoney/alexander.hpp"
#include "knotmoney/error.hpp"
#include "knotmoney/markov.hpp"
#include "knotmoney/mint.hpp"
#include "knotmoney/money_file.hpp"
#include "knotmoney/moves.hpp"
#include "knotmoney/qtable.hpp"
#include "knotmoney/verifier.hpp"

using namespace knotmoney;

namespace {

enum Exit { kAccept = 0, kReject = 1, kMalformed = 2, kCapacity = 3 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::StateTooLarge:
    case ErrorKind::SpaceTooLarge:
    case ErrorKind::CapacityExceeded:
    case ErrorKind::ExplosionLimit:
      return kCapacity;
    case ErrorKind::SerialMismatch:
    case ErrorKind::ZeroProbability:
      return kReject;
    default:
      return kMalformed;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedFile, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::MalformedFile, "cannot write " + path);
}

MintMode parse_mint_mode(const std::string& s) { return s == "classical" ? MintMode::Classical : MintMode::Exact; }
VerifyMode parse_verify_mode(const std::string& s) { return s == "sampled" ? VerifyMode::Sampled : VerifyMode::Exact; }

void describe(std::ostream& out, const GridDiagram& g) {
  out << "diagram " << to_text(g) << "\n";
  out << "hex " << to_hex(encode(g)) << "\n";
  out << "dimension " << g.dim() << "\n";
  out << "components " << components(g).count << "\n";
  out << "crossings " << crossings(g).size() << "\n";
  out << "serial " << alexander(g).to_string() << "\n";
  out << render_ascii(g);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"knotmoney: quantum money from knots, simulated exactly at small scale"};
  app.require_subcommand(1);

  // mint
  int mint_dbar = 2;
  std::string mint_mode = "exact";
  std::uint64_t mint_seed = 0;
  std::string mint_out;
  int mint_cap = 3;
  auto* mint_cmd = app.add_subcommand("mint", "Mint a bill and write it to a money file");
  mint_cmd->add_option("--dbar", mint_dbar, "Security parameter Dbar (>= 2)")->check(CLI::Range(2, 64));
  mint_cmd->add_option("--mode", mint_mode, "exact | classical")->check(CLI::IsMember({"exact", "classical"}));
  mint_cmd->add_option("--seed", mint_seed, "RNG seed");
  mint_cmd->add_option("--out", mint_out, "Output money file")->required();
  mint_cmd->add_option("--exact-cap", mint_cap, "Largest Dbar for exact minting");

  // verify
  std::string verify_file, verify_serial, verify_mode = "exact";
  int verify_rounds = 10;
  std::uint64_t verify_seed = 0;
  double verify_threshold = 0.99;
  bool no_projector = false;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a money file");
  verify_cmd->add_option("file", verify_file, "Money file")->required();
  verify_cmd->add_option("--serial", verify_serial, "Serial to check against (default: the file's)");
  verify_cmd->add_option("--rounds", verify_rounds, "Markov rounds r")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--mode", verify_mode, "exact | sampled")->check(CLI::IsMember({"exact", "sampled"}));
  verify_cmd->add_option("--seed", verify_seed, "RNG seed for sampled mode");
  verify_cmd->add_option("--threshold", verify_threshold, "Exact-mode acceptance threshold")->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_flag("--no-dimension-projector", no_projector, "Skip step 2");

  // alexander
  std::string alex_diagram;
  auto* alex_cmd = app.add_subcommand("alexander", "Print the serial of a diagram");
  alex_cmd->add_option("diagram", alex_diagram, "Diagram as x0,x1,.../o0,o1,... or hex encoding")->required();

  // moves
  std::string moves_diagram;
  std::vector<std::string> moves_apply;
  auto* moves_cmd = app.add_subcommand("moves", "Apply grid moves to a diagram");
  moves_cmd->add_option("diagram", moves_diagram, "Diagram")->required();
  moves_cmd->add_option("--apply", moves_apply, "Move spec such as j=6,x=1 or j=8,x=0,y=0,k=2 (repeatable)");

  // chain
  std::string chain_diagram;
  std::uint64_t chain_steps = 0, chain_seed = 0, chain_label = 0;
  int chain_dbar = 2;
  bool chain_stats = false;
  auto* chain_cmd = app.add_subcommand("chain", "Run the classical Markov chain from a diagram");
  chain_cmd->add_option("diagram", chain_diagram, "Start diagram")->required();
  chain_cmd->add_option("--steps", chain_steps, "Number of steps");
  chain_cmd->add_option("--seed", chain_seed, "RNG seed");
  chain_cmd->add_option("--dbar", chain_dbar, "Security parameter")->check(CLI::Range(2, 64));
  chain_cmd->add_option("--label", chain_label, "Start label i < q(d)");
  chain_cmd->add_flag("--stats", chain_stats, "Print chain statistics");

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Counterfeiting experiments");
  attack_cmd->require_subcommand(1);
  std::string single_diagram, single_serial;
  int attack_dbar = 2, attack_rounds = 10;
  auto* single_cmd = attack_cmd->add_subcommand("single", "Counterfeit from one measured diagram");
  single_cmd->add_option("diagram", single_diagram, "Diagram")->required();
  single_cmd->add_option("--serial", single_serial, "Claimed serial (default: the diagram's)");
  single_cmd->add_option("--dbar", attack_dbar, "Security parameter")->check(CLI::Range(2, 64));
  single_cmd->add_option("--rounds", attack_rounds, "Markov rounds")->check(CLI::PositiveNumber);
  auto* boundary_cmd = attack_cmd->add_subcommand("boundary", "Superposition stuck at dimension 2*Dbar");
  boundary_cmd->add_option("--dbar", attack_dbar, "Security parameter")->check(CLI::Range(2, 64));
  boundary_cmd->add_option("--rounds", attack_rounds, "Markov rounds")->check(CLI::PositiveNumber);
  std::vector<int> collision_dbars{2, 3};
  std::uint64_t collision_trials = 1000, collision_seed = 0;
  auto* collision_cmd = attack_cmd->add_subcommand("collision", "Serial collision frequency of repeated minting");
  collision_cmd->add_option("--dbar", collision_dbars, "Security parameters (repeatable)")->check(CLI::Range(2, 64));
  collision_cmd->add_option("--trials", collision_trials, "Bills minted per Dbar")->check(CLI::Range(2, 100'000'000));
  collision_cmd->add_option("--seed", collision_seed, "RNG seed");

  // qtable
  int qt_dbar = 2;
  auto* qt_cmd = app.add_subcommand("qtable", "Print the dimension weights q(d)");
  qt_cmd->add_option("--dbar", qt_dbar, "Security parameter")->check(CLI::Range(2, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kMalformed;
  }

  try {
    if (*mint_cmd) {
      MintParams p;
      p.dbar = mint_dbar;
      p.mode = parse_mint_mode(mint_mode);
      p.seed = mint_seed;
      p.exact_cap = mint_cap;
      const MoneyBill bill = mint(p);
      write_file(mint_out, write_money(bill));
      std::cout << bill.serial.to_string() << "\n";
      return kAccept;
    }
    if (*verify_cmd) {
      const MoneyBill bill = read_money(read_file(verify_file));
      const SerialPolynomial serial = verify_serial.empty() ? bill.serial : SerialPolynomial::parse(verify_serial);
      VerifierParams p;
      p.dbar = bill.params.dbar;
      p.rounds = verify_rounds;
      p.mode = parse_verify_mode(verify_mode);
      p.seed = verify_seed;
      p.dimension_projector = !no_projector;
      const VerificationReport rep = verify(bill, serial, p);
      std::cout << format_report(rep);
      const bool ok = rep.accepted ? *rep.accepted : rep.acceptance >= verify_threshold;
      std::cout << "verdict " << (ok ? "accept" : "reject") << "\n";
      return ok ? kAccept : kReject;
    }
    if (*alex_cmd) {
      std::cout << alexander(parse_diagram(alex_diagram)).to_string() << "\n";
      return kAccept;
    }
    if (*moves_cmd) {
      GridDiagram g = parse_diagram(moves_diagram);
      for (const auto& spec : moves_apply) {
        const MoveId s = parse_move(spec);
        if (s.j == 1) throw Error(ErrorKind::InvalidParameter, "j=1 acts on labels only; use the chain command");
        auto t = move_target(g, s, INT_MAX);
        std::cout << "apply " << to_string(s) << " " << (t ? "changed" : "no-op") << "\n";
        if (t) g = std::move(*t);
      }
      describe(std::cout, g);
      return kAccept;
    }
    if (*chain_cmd) {
      const ChainContext ctx(chain_dbar);
      const Config start{parse_diagram(chain_diagram), chain_label};
      Rng rng(chain_seed);
      const ChainRun run = run_chain(start, chain_steps, rng, ctx);
      std::cout << "diagram " << to_text(run.final.g) << "\n";
      std::cout << "label " << run.final.label << "\n";
      if (chain_stats) std::cout << format_stats(run.stats);
      return kAccept;
    }
    if (*single_cmd) {
      const GridDiagram g = parse_diagram(single_diagram);
      const SerialPolynomial serial = single_serial.empty() ? alexander(g) : SerialPolynomial::parse(single_serial);
      VerifierParams p;
      p.dbar = attack_dbar;
      p.rounds = attack_rounds;
      std::cout << format_attack(attack_single_diagram(g, serial, p));
      return kAccept;
    }
    if (*boundary_cmd) {
      VerifierParams p;
      p.dbar = attack_dbar;
      p.rounds = attack_rounds;
      std::cout << format_attack(attack_boundary_dimension(p));
      return kAccept;
    }
    if (*collision_cmd) {
      for (int dbar : collision_dbars) std::cout << format_attack(remint_collision_stats(dbar, collision_trials, collision_seed));
      return kAccept;
    }
    if (*qt_cmd) {
      const QTable qt(qt_dbar);
      std::cout << "dbar " << qt_dbar << "\n";
      for (int d = qt.dmin(); d <= qt.dmax(); ++d) {
        std::cout << "d " << d << " q " << qt.q_exact(d) << " diagrams " << diagram_count(d) << "\n";
      }
      std::cout << "q_max " << qt.q_max_exact() << "\n";
      std::cout << "configurations " << qt.config_count() << "\n";
      std::cout << "window " << qt.window_lo() << " " << qt.window_hi() << "\n";
      return kAccept;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMalformed;
  }
  return kMalformed;
}
