// tline: transient response of a lossless line at the generator node.
//
//   tline simulate --config <path> [--method analytic|bounce|fdtd|all] [--out <dir>] [--emit csv,svg,report]
//   tline preset <name> [--out <dir>]
//   tline compare --config <path>
//
// Every config key is also accepted as a flag of the same name
// (e.g. --line.length_m 4) and overrides the file.
//
// Exit codes: 0 success, 1 validation error, 2 unsupported formula, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tline/tline.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kUnsupported = 2, kIo = 3 };

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tline::IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct ConfigSource {
  std::string path;
  std::map<std::string, std::string> overrides;

  tline::RunConfig load() const {
    tline::ConfigEntries entries = tline::parse_entries(read_text(path));
    for (const auto& [key, value] : overrides) entries[key] = value;
    return tline::build_config(entries, std::filesystem::path(path).stem().string());
  }
};

void add_config_options(CLI::App* cmd, ConfigSource& src) {
  cmd->add_option("--config", src.path, "scenario config file")->required();
  for (const auto& key : tline::config::known_keys()) {
    if (key == "run.methods" || key == "run.emit" || key == "run.out") continue;
    cmd->add_option_function<std::string>("--" + key, [&src, key](const std::string& v) { src.overrides[key] = v; },
                                          "override " + key);
  }
}

/// Methods that have a formula for this scenario.
std::vector<tline::Method> applicable_methods(const tline::Scenario& sc) {
  if (tline::is_reactive(sc.termination())) return {tline::Method::analytic, tline::Method::fdtd};
  return {tline::Method::analytic, tline::Method::bounce, tline::Method::fdtd};
}

void write_outputs(const tline::RunConfig& cfg, const std::vector<tline::LabeledTrace>& traces) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_path, ec);
  if (ec) throw tline::IoError("cannot create output directory '" + cfg.output_path.string() + "'");
  for (tline::Emit e : cfg.emit) {
    switch (e) {
      case tline::Emit::csv: {
        const auto path = cfg.output_path / (cfg.name + ".csv");
        tline::emit_csv(traces, path);
        std::cout << "wrote " << path.string() << '\n';
        break;
      }
      case tline::Emit::svg: {
        const auto path = cfg.output_path / (cfg.name + ".svg");
        tline::emit_svg(traces, path, cfg.name);
        std::cout << "wrote " << path.string() << '\n';
        break;
      }
      case tline::Emit::report: {
        const std::string report = tline::compare(cfg.scenario, traces).format();
        const auto path = cfg.output_path / (cfg.name + "_report.txt");
        std::ofstream out(path, std::ios::binary);
        if (!(out << report)) throw tline::IoError("failed writing '" + path.string() + "'");
        std::cout << report << "wrote " << path.string() << '\n';
        break;
      }
    }
  }
}

int run_checked(const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const tline::UnsupportedFormulaError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const tline::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const tline::PoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const tline::ValidationError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kValidation;
  } catch (const tline::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transient response of lossless transmission lines"};
  app.require_subcommand(1);

  ConfigSource sim_src;
  std::string sim_method;
  std::string sim_out;
  std::string sim_emit;
  auto* simulate = app.add_subcommand("simulate", "run a configured scenario");
  add_config_options(simulate, sim_src);
  simulate->add_option("--method", sim_method, "analytic|bounce|fdtd|all (comma list allowed)");
  simulate->add_option("--out", sim_out, "output directory");
  simulate->add_option("--emit", sim_emit, "csv,svg,report");

  std::string preset_name;
  std::string preset_out = ".";
  auto* preset = app.add_subcommand("preset", "run a reference scenario");
  preset->add_option("name", preset_name, "fig4a|fig4b|fig5a|fig5b|fig6a|fig6b")->required();
  preset->add_option("--out", preset_out, "output directory");

  ConfigSource cmp_src;
  auto* compare = app.add_subcommand("compare", "compare every applicable method against each other");
  add_config_options(compare, cmp_src);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  if (simulate->parsed()) {
    return run_checked([&] {
      tline::RunConfig cfg = sim_src.load();
      if (!sim_method.empty()) {
        cfg.methods = sim_method == "all" ? applicable_methods(cfg.scenario)
                                          : tline::config::read_methods("--method", sim_method);
      }
      if (!sim_out.empty()) cfg.output_path = sim_out;
      if (!sim_emit.empty()) cfg.emit = tline::config::read_emit("--emit", sim_emit);
      write_outputs(cfg, tline::run_methods(cfg));
    });
  }
  if (preset->parsed()) {
    return run_checked([&] {
      tline::RunConfig cfg = tline::run_preset(preset_name);
      cfg.output_path = preset_out;
      write_outputs(cfg, tline::run_methods(cfg));
    });
  }
  return run_checked([&] {
    tline::RunConfig cfg = cmp_src.load();
    cfg.methods = applicable_methods(cfg.scenario);
    std::cout << tline::compare(cfg.scenario, tline::run_methods(cfg)).format();
  });
}
