// flagrank: command-line front end.
//
//   flagrank analyze [FILE|-] [--builtin NAME] [--tasks a,b] [--samples N]
//                    [--seed S] [--point "(..)"] [--dist NAME]
//                    [--format json|text] [--timing]
//   flagrank models list [--format json|text]
//   flagrank models emit NAME

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "flagrank/dsl/dsl.hpp"
#include "flagrank/errors.hpp"
#include "flagrank/models/catalog.hpp"
#include "flagrank/report/report.hpp"

using namespace flagrank;
namespace rep = flagrank::report;

namespace {

struct AnalyzeArgs {
  std::string file;
  std::string builtin;
  std::vector<std::string> tasks;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> point;
  std::optional<std::string> dist;
  std::string format = "json";
  bool timing = false;
};

void emit(const nlohmann::ordered_json& j, const std::string& format) {
  std::cout << (format == "text" ? rep::render_text(j) : rep::render_json(j));
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("FLAGRANK_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  unsigned long long v = std::strtoull(s, &end, 10);
  if (errno || *end || s[0] == '-') {
    throw Error(ErrorKind::InvalidArgument, std::string("FLAGRANK_SEED is not a seed: ") + s);
  }
  return v;
}

int run_analyze(const AnalyzeArgs& a) {
  std::string name = a.builtin.empty() ? (a.file.empty() || a.file == "-" ? "<stdin>" : a.file)
                                       : a.builtin;
  rep::Outcome out;
  try {
    if (!a.builtin.empty() && !a.file.empty()) {
      throw Error(ErrorKind::InvalidArgument, "give either a file or --builtin, not both");
    }
    dsl::Model model;
    if (!a.builtin.empty()) {
      model = models::load_model(a.builtin);
    } else {
      dsl::ModelSource src;
      if (a.file.empty() || a.file == "-") {
        src.text.assign(std::istreambuf_iterator<char>(std::cin), {});
      } else {
        std::ifstream in(a.file, std::ios::binary);
        if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + a.file);
        src.text.assign(std::istreambuf_iterator<char>(in), {});
        src.origin = a.file;
      }
      model = dsl::load(src);
    }
    rep::Options opt;
    opt.samples = a.samples;
    opt.seed = a.seed ? a.seed : env_seed();
    opt.point = a.point;
    opt.dist = a.dist;
    opt.timing = a.timing;
    out = rep::analyze(model, a.tasks, opt, name);
  } catch (const Error& e) {
    out = rep::failure(e, name);
  } catch (const std::exception& e) {
    out = rep::failure(Error(ErrorKind::Internal, e.what()), name);
  }
  // Errors live in the report; nothing goes to stderr.
  emit(out.json, a.format);
  return out.exit_code;
}

int run_list(const std::string& format) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& m : models::catalog_list()) {
    j.push_back({{"name", m.name}, {"description", m.description}, {"lift", m.lift}});
  }
  if (format == "text") {
    for (const auto& m : models::catalog_list()) std::cout << m.name << "  " << m.description << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  return rep::kOk;
}

int run_emit(const std::string& name) {
  try {
    std::cout << models::emit(name);
    return rep::kOk;
  } catch (const Error& e) {
    std::cerr << "flagrank: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return rep::exit_code_for(e.kind());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification of (3,5,6) distributions and parabolic flags"};
  app.set_version_flag("--version", std::string(rep::kToolVersion));
  app.require_subcommand(1);

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "run analysis tasks on a model");
  analyze->add_option("file", aa.file, "model file, or - for stdin");
  analyze->add_option("--builtin", aa.builtin, "catalog model name");
  analyze->add_option("--tasks", aa.tasks, "comma-separated task list")
      ->delimiter(',')
      ->check(CLI::IsMember(dsl::task_names()));
  analyze->add_option("--samples", aa.samples, "sample points for scans")->check(CLI::PositiveNumber);
  analyze->add_option("--seed", aa.seed, "sampler seed");
  analyze->add_option("--point", aa.point, "evaluation point, e.g. \"(0, 1/2, 0)\"");
  analyze->add_option("--dist", aa.dist, "distribution to analyze (default: last declared)");
  analyze->add_option("--format", aa.format, "output format")->check(CLI::IsMember({"json", "text"}));
  analyze->add_flag("--timing", aa.timing, "report per-task wall time");

  auto* models_cmd = app.add_subcommand("models", "built-in model catalog");
  models_cmd->require_subcommand(1);
  std::string list_format = "json";
  auto* list = models_cmd->add_subcommand("list", "list catalog models");
  list->add_option("--format", list_format, "output format")->check(CLI::IsMember({"json", "text"}));
  std::string emit_name;
  auto* emit_cmd = models_cmd->add_subcommand("emit", "print a catalog model as .dist text");
  emit_cmd->add_option("name", emit_name, "model name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? rep::kOk : rep::kUsage;
  }

  if (*analyze) return run_analyze(aa);
  if (*list) return run_list(list_format);
  if (*emit_cmd) return run_emit(emit_name);
  return rep::kUsage;
}
