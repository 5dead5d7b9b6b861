// Command-line front end: diagram inspection and the verification suites.
//
// Exit status: 0 success, 1 a check or validation failed (or a resource cap
// was hit), 2 bad input.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aftail/aftail.hpp"

namespace {

using namespace aftail;

constexpr int kFail = 1;
constexpr int kInput = 2;

// Built-ins grow to cover `needed`; files must already have enough levels.
LoadedDiagram load_covering(const std::string& src, std::optional<std::size_t> depth, std::size_t needed) {
  if (!depth && is_builtin(src)) {
    depth = std::max(builtin_registry().at(src).default_depth, needed);
  }
  LoadedDiagram loaded = load_source(src, depth);
  if (needed > loaded.diagram.depth()) {
    throw DomainError("level " + std::to_string(needed) + " exceeds depth " + std::to_string(loaded.diagram.depth()));
  }
  return loaded;
}

bool report_violations(const BratteliDiagram& d) {
  auto violations = validate(d);
  for (const auto& v : violations) std::cout << "VIOLATION " << to_string(v) << '\n';
  return violations.empty();
}

int cmd_validate(const std::string& src, std::optional<std::size_t> depth) {
  LoadedDiagram loaded = load_source(src, depth);
  if (!report_violations(loaded.diagram)) {
    std::cout << "INVALID\n";
    return kFail;
  }
  std::cout << "VALID depth=" << loaded.diagram.depth() << '\n';
  return 0;
}

int cmd_counts(const std::string& src, std::optional<std::size_t> depth, std::size_t level) {
  LoadedDiagram loaded = load_covering(src, depth, level);
  if (!report_violations(loaded.diagram)) return kFail;
  auto counts = path_counts(loaded.diagram, level);
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < counts[level].size(); ++v) {
    std::cout << "#" << to_string(Vertex{level, v}) << " = " << counts[level][v] << '\n';
    total += counts[level][v];
  }
  std::cout << "paths=" << total << '\n';
  return 0;
}

int cmd_dims(const std::string& src, std::optional<std::size_t> depth, std::size_t max_level) {
  LoadedDiagram loaded = load_covering(src, depth, max_level);
  if (!report_violations(loaded.diagram)) return kFail;
  SpacePtr space = PathSpace::create(loaded.diagram.truncated(max_level));
  for (std::size_t n = 0; n <= max_level; ++n) {
    auto dims = dimension_vector(space, n);
    std::cout << "level " << n << " blocks";
    for (auto b : dims.block_sizes) std::cout << ' ' << b;
    std::cout << " dim=" << dims.total << '\n';
  }
  return 0;
}

int cmd_embed_matrix(const std::string& src, std::optional<std::size_t> depth, std::size_t level) {
  LoadedDiagram loaded = load_covering(src, depth, level + 1);
  if (!report_violations(loaded.diagram)) return kFail;
  SpacePtr space = PathSpace::create(loaded.diagram.truncated(level + 1));
  auto realized = realized_multiplicities(space, level);
  bool agrees = realized == loaded.diagram.incidence(level);
  std::cout << "embed A_" << level << " -> A_" << level + 1 << '\n';
  for (const auto& row : realized) {
    for (std::size_t k = 0; k < row.size(); ++k) std::cout << (k ? " " : "") << row[k];
    std::cout << '\n';
  }
  std::cout << (agrees ? "MATCHES incidence" : "DIFFERS from incidence") << '\n';
  return agrees ? 0 : kFail;
}

int cmd_verify(const VerifyConfig& config) {
  VerifyReport report = run_suites(config);
  std::cout << format_report(report);
  return report.passed() ? 0 : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bratteli diagram path spaces, AF towers and tail-groupoid checks"};
  app.require_subcommand(1);

  std::string src;
  std::optional<std::size_t> depth;
  std::size_t level = 0;
  std::size_t max_level = 0;
  VerifyConfig config;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("source", src, "built-in name (car, pascal, gicar, fibonacci, uhf3) or diagram file")->required();
    sub->add_option("--depth", depth, "truncation depth");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check the diagram conditions");
  add_source(validate_cmd);
  auto* counts_cmd = app.add_subcommand("counts", "rooted path counts #v at one level");
  add_source(counts_cmd);
  counts_cmd->add_option("--level", level, "level")->required();
  auto* dims_cmd = app.add_subcommand("dims", "block sizes and dimension of A_n");
  add_source(dims_cmd);
  dims_cmd->add_option("--max-level", max_level, "last level")->required();
  auto* embed_cmd = app.add_subcommand("embed-matrix", "multiplicity matrix realized by A_n -> A_{n+1}");
  add_source(embed_cmd);
  embed_cmd->add_option("--level", level, "level n")->required();
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
  add_source(verify_cmd);
  verify_cmd->add_option("--seed", config.seed, "rng seed");
  verify_cmd->add_option("--samples", config.samples, "random samples per property");
  verify_cmd->add_option("--suite", config.suites, "restrict to these suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInput;
  }

  try {
    if (*validate_cmd) return cmd_validate(src, depth);
    if (*counts_cmd) return cmd_counts(src, depth, level);
    if (*dims_cmd) return cmd_dims(src, depth, max_level);
    if (*embed_cmd) return cmd_embed_matrix(src, depth, level);
    config.source = src;
    config.depth = depth;
    return cmd_verify(config);
  } catch (const ResourceError& e) {
    std::cerr << "resource: " << e.what() << '\n';
    return kFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
}
