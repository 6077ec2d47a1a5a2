// Command-line front end: build named twirling channels, discover their
// block structure, emit minimal mixed-unitary decompositions, and verify
// them.  All data I/O uses the shared JSON schema; stdout carries data and
// stderr carries diagnostics.  Exit codes: 0 success, 1 verification
// failure, 2 input/usage error.

#include "twirlkit/channel.hpp"
#include "twirlkit/isotypic.hpp"
#include "twirlkit/json_io.hpp"
#include "twirlkit/mud.hpp"
#include "twirlkit/twirls.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using twirlkit::io::json;

struct CliConfig {
  double tolerance = 1e-10;
  unsigned long long seed = 0;
  int max_retries = 8;
  std::string output_path;  // empty means stdout
};

void emit(const json& j, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot open output file: " + output_path);
    out << j.dump(2) << "\n";
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return json::parse(in);
}

// "MxN,MxN,..." -> BlockSpec.
twirlkit::BlockSpec parse_spec(const std::string& text) {
  std::vector<twirlkit::Block> blocks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    if (x == std::string::npos)
      throw std::runtime_error("bad --spec entry (expected MxN): " + item);
    blocks.push_back({std::stoi(item.substr(0, x)), std::stoi(item.substr(x + 1))});
  }
  return twirlkit::BlockSpec(blocks);
}

twirlkit::Channel build_channel(const std::string& kind, int n,
                                const std::string& spec_text,
                                const std::string& group_path) {
  if (kind == "depolarizing") return twirlkit::depolarizing(n);
  if (kind == "block") return twirlkit::block_channel(parse_spec(spec_text));
  if (kind == "perm-twirl") return twirlkit::permutation_twirl_closed_form(n);
  if (kind == "werner") return twirlkit::werner_channel(n);
  if (kind == "group-twirl") {
    if (group_path.empty()) throw std::runtime_error("group-twirl requires --group");
    return twirlkit::twirl_finite_group(
        twirlkit::io::group_rep_from_json(read_json_file(group_path)));
  }
  throw std::runtime_error("unknown channel kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twirlkit: twirling channels and minimal mixed-unitary decompositions"};
  app.require_subcommand(1);

  CliConfig config;
  app.add_option("--tol", config.tolerance, "numeric tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", config.seed, "random seed");
  app.add_option("--retries", config.max_retries, "max retries for structure discovery")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", config.output_path, "output file (default stdout)");

  std::string kind, spec_text, group_path, channel_path, decomposition_path;
  int n = 2;

  CLI::App* build = app.add_subcommand("build", "construct a named channel");
  build->add_option("kind", kind, "depolarizing|block|perm-twirl|werner|group-twirl")
      ->required();
  build->add_option("--n", n, "dimension parameter");
  build->add_option("--spec", spec_text, "block spec, comma-separated MxN pairs");
  build->add_option("--group", group_path, "FiniteGroupRep JSON file");

  CLI::App* decompose =
      app.add_subcommand("decompose", "minimal mixed-unitary decomposition");
  decompose->add_option("channel", channel_path, "channel JSON file")->required();

  CLI::App* verify = app.add_subcommand("verify", "check a decomposition against a channel");
  verify->add_option("channel", channel_path, "channel JSON file")->required();
  verify->add_option("decomposition", decomposition_path, "decomposition JSON file")
      ->required();

  CLI::App* rank = app.add_subcommand("rank", "Choi rank of a channel");
  rank->add_option("channel", channel_path, "channel JSON file")->required();

  CLI::App* structure = app.add_subcommand("structure", "commutant block structure");
  structure->add_option("channel", channel_path, "channel JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      emit(twirlkit::io::to_json(build_channel(kind, n, spec_text, group_path)),
           config.output_path);
      return 0;
    }
    if (decompose->parsed()) {
      const twirlkit::Channel phi =
          twirlkit::io::channel_from_json(read_json_file(channel_path));
      twirlkit::BlockStructure bs;
      try {
        bs = twirlkit::block_structure(phi, config.seed, config.tolerance,
                                       config.max_retries);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: not a twirling channel (" << e.what() << ")\n";
        return 2;
      }
      const twirlkit::MixedUnitaryDecomposition d =
          twirlkit::conjugated_decomposition(
              twirlkit::minimal_decomposition(bs.spec), bs.basis_change, 1e-8);
      std::cerr << json{{"spec", twirlkit::io::to_json(bs.spec)},
                        {"rank", bs.spec.rank()}}
                       .dump()
                << "\n";
      emit(twirlkit::io::to_json(d), config.output_path);
      return 0;
    }
    if (verify->parsed()) {
      const twirlkit::Channel target =
          twirlkit::io::channel_from_json(read_json_file(channel_path));
      const twirlkit::MixedUnitaryDecomposition d =
          twirlkit::io::decomposition_from_json(read_json_file(decomposition_path));
      const twirlkit::DecompositionReport report =
          twirlkit::verify_decomposition(d, target, config.tolerance);
      emit(twirlkit::io::to_json(report), config.output_path);
      return report.pass ? 0 : 1;
    }
    if (rank->parsed()) {
      const twirlkit::Channel c =
          twirlkit::io::channel_from_json(read_json_file(channel_path));
      emit(json{{"choi_rank", twirlkit::choi_rank(c, config.tolerance)}},
           config.output_path);
      return 0;
    }
    if (structure->parsed()) {
      const twirlkit::Channel phi =
          twirlkit::io::channel_from_json(read_json_file(channel_path));
      twirlkit::BlockStructure bs;
      try {
        bs = twirlkit::block_structure(phi, config.seed, config.tolerance,
                                       config.max_retries);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: not a twirling channel (" << e.what() << ")\n";
        return 2;
      }
      emit(twirlkit::io::to_json(bs), config.output_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
