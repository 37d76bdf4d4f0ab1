#include "commands.hpp"

#include "flipbench/error.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using flipbench::cli::Exit;
using flipbench::cli::Json;
using flipbench::cli::RunConfig;

namespace {

struct Output {
  std::string json_path;
  std::string cache_dir;
};

std::optional<Json> cache_load(const fs::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    Json j = Json::parse(in);
    if (j.value("schema_version", 0) != flipbench::cli::schema_version) return std::nullopt;
    return j;
  } catch (const Json::exception&) {
    return std::nullopt;  // a torn or foreign file is recomputed
  }
}

void write_atomically(const fs::path& file, const std::string& text) {
  fs::create_directories(file.parent_path().empty() ? fs::path(".") : file.parent_path());
  const fs::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, file);
}

template <class T>
void add_optional(CLI::App* app, const std::string& name, std::optional<T>& target, const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for rank-one Iwasawa decompositions"};
  app.require_subcommand(1);
  app.fallthrough();  // common flags may follow the subcommand
  RunConfig cfg;
  Output out;

  app.add_option("--json", out.json_path, "Write the JSON report to this path ('-' for stdout)");
  app.add_option("--seed", cfg.seed, "Sample seed");
  app.add_option("--cache", out.cache_dir, "Cache directory keyed by config hash and schema version");
  app.add_option("--max-group-order", cfg.max_group_order, "Refuse q with |SL2(F_q)| above this");
  app.add_flag("--timing", cfg.timing, "Include wall-clock timings (reports stop being reproducible)");

  const auto q_opts = [&](CLI::App* sub) {
    add_optional(sub, "--q", cfg.q, "A single prime power");
    add_optional(sub, "--max-q", cfg.max_q, "All prime powers up to this bound");
  };
  const auto group_opt = [&](CLI::App* sub) {
    sub->add_option("--group", cfg.group, "sl2, psl2 or both")->check(CLI::IsMember({"sl2", "psl2", "both"}));
  };

  CLI::App* field_check = app.add_subcommand("field-check", "Iwasawa pair check against the transitivity oracle");
  q_opts(field_check);
  add_optional(field_check, "--field", cfg.field, "Field spec: Fq:..., Q or Q(sqrt:d)");
  add_optional(field_check, "--sigma", cfg.sigma, "id, frob^k or conj");
  group_opt(field_check);

  CLI::App* sweep = app.add_subcommand("flip-sweep", "Criterion versus brute-force transitivity for every flip");
  q_opts(sweep);
  add_optional(sweep, "--sigma", cfg.sigma, "Restrict to one automorphism");
  add_optional(sweep, "--delta", cfg.delta, "Restrict to one delta");
  group_opt(sweep);

  CLI::App* moufang = app.add_subcommand("moufang", "Moufang set M(F_q) axioms and identity suite");
  add_optional(moufang, "--q", cfg.q, "Prime power");
  add_optional(moufang, "set", cfg.moufang_set, "Moufang set spec such as M(Fq:7)");
  moufang->add_flag("--verify-all", cfg.verify_all, "Run the full identity suite");

  CLI::App* classify = app.add_subcommand("classify", "Additive flips: brute force against x -> eps x^sigma");
  q_opts(classify);

  CLI::App* quat = app.add_subcommand("quat", "Seeded quaternion suite");
  quat->add_option("--samples", cfg.samples, "Samples per property");
  quat->add_option("--quat", cfg.quat, "Structure constants a,b with i^2 = a, j^2 = b");

  CLI::App* demo = app.add_subcommand("product-demo", "PSL2 x PSL2 local-to-global demo");
  add_optional(demo, "--q", cfg.q, "Prime power <= 11");

  CLI::App* factorize = app.add_subcommand("factorize", "Iwasawa factorization g = k b");
  add_optional(factorize, "--q", cfg.q, "Prime power");
  add_optional(factorize, "--delta", cfg.delta, "Flip parameter (default 1)");
  add_optional(factorize, "--sigma", cfg.sigma, "Automorphism (default id)");
  add_optional(factorize, "--matrix", cfg.matrix, "Single matrix [[a,b],[c,d]]");
  group_opt(factorize);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(Exit::usage);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "factorize" && cfg.group == "both") cfg.group = "psl2";

  try {
    std::optional<Json> report;
    fs::path cached;
    if (!out.cache_dir.empty()) {
      cached = fs::path(out.cache_dir) / (flipbench::cli::config_key(cfg) + ".json");
      report = cache_load(cached);
    }
    if (!report) {
      report = flipbench::cli::run(cfg);
      if (!cached.empty()) write_atomically(cached, report->dump(2) + "\n");
    }
    const std::string text = report->dump(2) + "\n";
    if (out.json_path == "-") {
      std::cout << text;
    } else {
      if (!out.json_path.empty()) write_atomically(out.json_path, text);
      std::cout << flipbench::cli::text_summary(*report);
    }
    return report->at("summary").at("exit_code").get<int>();
  } catch (const flipbench::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(Exit::usage);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(Exit::usage);
  }
}
