// ppf: sample point configurations, build factor graphs, verify, export.
#include <openssl/evp.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppf/ppf.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kManifestVersion = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A failed C API call, carrying its status.
struct ApiError : std::runtime_error {
  ppf_status status;
  ApiError(ppf_status s, const std::string& message) : std::runtime_error(message), status(s) {}
};

void check(ppf_status s) {
  if (s != PPF_OK) {
    std::string message = ppf_last_error();
    if (message.empty()) message = ppf_status_name(s);
    throw ApiError(s, message);
  }
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using ConfigHandle = Handle<ppf_config, ppf_config_free>;
using GraphHandle = Handle<ppf_graph, ppf_graph_free>;
using ReportHandle = Handle<ppf_report, ppf_report_free>;

std::string take_string(char* s) {
  std::string out = s ? s : "";
  ppf_string_free(s);
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ApiError(PPF_IO_ERROR, "IoError: cannot read " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw ApiError(PPF_IO_ERROR, "IoError: cannot write " + path);
}

std::optional<std::string> env_seed() {
  const char* v = std::getenv("PPF_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::uint64_t parse_seed(const std::string& text, const std::string& source) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(source + ": '" + text + "' is not an unsigned integer seed");
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const auto e = env_seed()) return parse_seed(*e, "PPF_SEED");
  return 0;
}

// Per-run state shared by the subcommands.
struct Run {
  std::vector<std::string> argv;
  bool manifests = true;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void manifest(const std::string& command, const json& params, std::optional<std::uint64_t> seed,
                const std::vector<std::string>& inputs, const std::string& output) const {
    if (!manifests || output.empty() || output == "-") return;
    json m;
    m["version"] = kManifestVersion;
    m["tool_version"] = ppf_version();
    m["command"] = command;
    m["argv"] = argv;
    m["params"] = params;
    m["seed"] = seed ? json(*seed) : json(nullptr);
    const auto e = env_seed();
    m["env"] = {{"PPF_SEED", e ? json(*e) : json(nullptr)}};
    json in = json::array();
    for (const auto& p : inputs) in.push_back({{"path", p}, {"sha256", sha256_file(p)}});
    m["inputs"] = in;
    m["outputs"] = json::array({{{"path", output}, {"sha256", sha256_file(output)}}});
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    m["started_at"] = stamp;
    m["wall_clock_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(output + ".manifest.json", m.dump(2) + "\n");
  }
};

struct SamplerFlags {
  std::string process;
  int dim = 2;
  double side = 1.0;
  std::string topology = "torus";
  std::optional<double> intensity;
  std::optional<std::uint64_t> points;
  std::optional<double> spacing;
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;

  void add(CLI::App* app, bool process_required) {
    auto* p = app->add_option("--process", process, "poisson, binomial or lattice")
                  ->check(CLI::IsMember({"poisson", "binomial", "lattice"}));
    if (process_required) p->required();
    app->add_option("--dim", dim, "dimension d")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--side", side, "window side L")->capture_default_str()->check(CLI::PositiveNumber);
    app->add_option("--topology", topology, "torus or box")->capture_default_str()->check(CLI::IsMember({"torus", "box"}));
    app->add_option("--intensity", intensity, "Poisson intensity");
    app->add_option("--points", points, "binomial point count");
    app->add_option("--spacing", spacing, "lattice spacing");
    app->add_option("--seed", seed, "seed (default: $PPF_SEED, else 0)");
    app->add_option("--stream", stream, "substream within the seed")->capture_default_str();
  }

  ppf_sampler resolve() const {
    ppf_sampler s;
    ppf_sampler_init(&s);
    s.process = process.c_str();
    s.topology = topology.c_str();
    s.dim = static_cast<uint32_t>(dim);
    s.side = side;
    s.seed = resolve_seed(seed);
    s.stream = stream;
    if (process == "poisson") {
      if (!intensity) throw UsageError("--intensity is required for --process poisson");
      s.intensity = *intensity;
    } else if (process == "binomial") {
      if (!points) throw UsageError("--points is required for --process binomial");
      s.points = *points;
    } else if (process == "lattice") {
      if (!spacing) throw UsageError("--spacing is required for --process lattice");
      s.spacing = *spacing;
    }
    return s;
  }

  json params() const {
    json j{{"process", process}, {"dim", dim}, {"side", side}, {"topology", topology}, {"stream", stream}};
    if (intensity) j["intensity"] = *intensity;
    if (points) j["points"] = *points;
    if (spacing) j["spacing"] = *spacing;
    return j;
  }
};

std::vector<int32_t> parse_int_list(const std::string& csv, const std::string& flag) {
  std::vector<int32_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash != std::string::npos && dash > 0) {
      const auto lo = parse_seed(item.substr(0, dash), "--seeds");
      const auto hi = parse_seed(item.substr(dash + 1), "--seeds");
      if (hi < lo || hi - lo > 100000) throw UsageError("--seeds: bad range '" + item + "'");
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
    } else {
      out.push_back(parse_seed(item, "--seeds"));
    }
  }
  if (out.empty()) throw UsageError("--seeds: empty list");
  return out;
}

int run(std::vector<std::string> args, bool manifests);

int replay(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw ApiError(PPF_IO_ERROR, "IoError: cannot read " + manifest_path);
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw ApiError(PPF_PARSE_ERROR, std::string("ParseError: manifest: ") + e.what());
  }
  for (const auto& input : m.at("inputs")) {
    const std::string path = input.at("path");
    if (sha256_file(path) != input.at("sha256").get<std::string>()) {
      std::cerr << "replay: input " << path << " changed since the recorded run\n";
      return kExitFailure;
    }
  }
  const auto& output = m.at("outputs").at(0);
  const std::string recorded_path = output.at("path");
  const fs::path temp = fs::temp_directory_path() / ("ppf-replay-" + std::to_string(getpid()) + "-" +
                                                     fs::path(recorded_path).filename().string());
  std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
  bool replaced = false;
  for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
    if (argv[i] == "--output" || argv[i] == "-o") {
      argv[i + 1] = temp.string();
      replaced = true;
    }
  }
  if (!replaced) throw UsageError("manifest argv has no --output");
  const auto& env = m.at("env").at("PPF_SEED");
  if (env.is_null()) {
    unsetenv("PPF_SEED");
  } else {
    setenv("PPF_SEED", env.get<std::string>().c_str(), 1);
  }
  const int code = run(argv, false);
  const bool same = fs::exists(temp) && sha256_file(temp) == output.at("sha256").get<std::string>();
  std::error_code ignored;
  fs::remove(temp, ignored);
  std::cout << "replay " << m.at("command").get<std::string>() << ": " << (same ? "identical" : "DIFFERENT") << " ("
            << recorded_path << ")\n";
  if (!same) return kExitFailure;
  return code == kExitOk || m.at("command") == "verify" ? kExitOk : code;
}

int run(std::vector<std::string> args, bool manifests) {
  Run ctx{args, manifests};
  CLI::App app{"Equivariant factor graphs on sampled point processes", "ppf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ppf_version()));

  // sample
  SamplerFlags sample_flags;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "sample a point configuration");
  sample_flags.add(sample, true);
  sample->add_option("-o,--output", sample_out, "configuration file")->required();

  // build
  std::string build_what, build_in, build_out, build_schedule;
  int build_grid_dim = 2;
  unsigned build_k0 = 2;
  bool build_remainder = false;
  auto* build = app.add_subcommand("build", "build a tree, path or grid factor");
  build->add_option("--what", build_what, "tree, path or grid")->required()->check(CLI::IsMember({"tree", "path", "grid"}));
  build->add_option("-i,--input", build_in, "configuration file")->required();
  build->add_option("-o,--output", build_out, "graph file")->required();
  build->add_option("--grid-dim", build_grid_dim, "grid dimension n")->capture_default_str();
  build->add_option("--schedule", build_schedule, "dyadic contractions per level, comma separated");
  build->add_option("--k0", build_k0, "initial profile length")->capture_default_str()->check(CLI::PositiveNumber);
  build->add_flag("--allow-remainder", build_remainder, "allow N that is not a power of two");

  // verify
  std::string verify_suite, verify_seeds, verify_out;
  std::optional<std::size_t> verify_trials;
  ppf_verify_options vo;
  ppf_verify_options_init(&vo);
  unsigned verify_dim = vo.dim;
  auto* verify = app.add_subcommand("verify", "run a verification suite (exit 0 iff all checks pass)");
  verify->add_option("--suite", verify_suite, "tree, grid, clumping, mtp, equivariance or all")
      ->required()
      ->check(CLI::IsMember({"tree", "grid", "clumping", "mtp", "equivariance", "all"}));
  verify->add_option("--trials", verify_trials, "MTP trials, or translations for the equivariance suite");
  verify->add_option("--seeds", verify_seeds, "seed list, e.g. 1,2,5-9 (default: $PPF_SEED, else 1-5)");
  verify->add_option("--points", vo.points, "binomial N")->capture_default_str();
  verify->add_option("--dim", verify_dim, "dimension d")->capture_default_str();
  verify->add_option("--side", vo.side, "window side L")->capture_default_str();
  verify->add_option("--intensity", vo.intensity, "Poisson intensity of the MTP suite")->capture_default_str();
  verify->add_option("--grid-dim", vo.grid_dim, "grid dimension n")->capture_default_str();
  verify->add_option("--delta", vo.delta_fraction, "thickened boundary width as a fraction of L")->capture_default_str();
  verify->add_option("--threads", vo.threads, "worker threads (0: all cores)")->capture_default_str();
  verify->add_option("-o,--output", verify_out, "report file (JSON)");

  // export
  std::string export_in, export_format, export_table, export_out, export_kernel;
  std::size_t export_trials = 1000;
  std::size_t export_threads = 0;
  SamplerFlags export_sampler;
  auto* exp = app.add_subcommand("export", "export a graph as dot/csv, or an MTP trace as csv");
  exp->add_option("-i,--input", export_in, "graph file");
  exp->add_option("--format", export_format, "dot or csv")->required();
  exp->add_option("--table", export_table, "csv table: vertices, degrees or deficiency")->capture_default_str();
  exp->add_option("--kernel", export_kernel, "MTP kernel whose per-trial trace is exported");
  exp->add_option("--trials", export_trials, "MTP trials")->capture_default_str();
  exp->add_option("--threads", export_threads, "worker threads (0: all cores)")->capture_default_str();
  export_sampler.add(exp, false);
  exp->add_option("-o,--output", export_out, "output file (default: stdout)");

  // replay
  std::string replay_manifest;
  auto* rep = app.add_subcommand("replay", "rerun a manifest and compare output hashes");
  rep->add_option("manifest", replay_manifest, "manifest file")->required();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sample) {
      const ppf_sampler s = sample_flags.resolve();
      ConfigHandle config;
      check(ppf_config_sample(&s, &config.p));
      check(ppf_config_save(config.p, sample_out.c_str()));
      ctx.manifest("sample", sample_flags.params(), s.seed, {}, sample_out);
      std::cout << "sampled " << ppf_config_size(config.p) << " points -> " << sample_out << "\n";
      return kExitOk;
    }
    if (*build) {
      ppf_build_options o;
      ppf_build_options_init(&o);
      o.k0 = build_k0;
      o.grid_dim = build_grid_dim;
      const std::vector<int32_t> schedule = build_schedule.empty() ? std::vector<int32_t>{}
                                                                    : parse_int_list(build_schedule, "--schedule");
      o.schedule = schedule.data();
      o.schedule_len = schedule.size();
      o.allow_remainder = build_remainder ? 1 : 0;
      ConfigHandle config;
      check(ppf_config_load(build_in.c_str(), &config.p));
      GraphHandle graph;
      check(ppf_build(config.p, build_what.c_str(), &o, &graph.p));
      check(ppf_graph_save(graph.p, build_out.c_str()));
      json params{{"what", build_what}, {"input", build_in}, {"grid_dim", build_grid_dim},
                  {"k0", build_k0},     {"schedule", schedule}, {"allow_remainder", build_remainder}};
      ctx.manifest("build", params, std::nullopt, {build_in}, build_out);
      std::cout << "built " << build_what << ": " << ppf_graph_vertex_count(graph.p) << " vertices, "
                << ppf_graph_edge_count(graph.p) << " edges -> " << build_out << "\n";
      return kExitOk;
    }
    if (*verify) {
      std::vector<std::uint64_t> seeds;
      if (!verify_seeds.empty()) {
        seeds = parse_seed_list(verify_seeds);
      } else if (const auto e = env_seed()) {
        seeds = {parse_seed(*e, "PPF_SEED")};
      }
      vo.seeds = seeds.empty() ? nullptr : seeds.data();
      vo.seed_count = seeds.size();
      vo.dim = verify_dim;
      if (verify_trials) {
        vo.trials = *verify_trials;
        vo.translations = *verify_trials;
      }
      ReportHandle report;
      check(ppf_verify(verify_suite.c_str(), &vo, &report.p));
      const json doc = json::parse(ppf_report_json(report.p));
      for (const auto& suite : doc) {
        std::cout << suite.at("suite").get<std::string>() << ": " << (suite.at("pass").get<bool>() ? "PASS" : "FAIL")
                  << " (" << suite.at("checks").size() << " checks, " << suite.at("failures").get<std::size_t>()
                  << " failed)\n";
        for (const auto& c : suite.at("checks")) {
          if (!c.at("pass").get<bool>()) {
            std::cout << "  FAIL " << c.at("name").get<std::string>() << ": " << c.at("detail").get<std::string>() << "\n";
          }
        }
      }
      if (!verify_out.empty()) {
        write_text(verify_out, ppf_report_json(report.p));
        json params{{"suite", verify_suite}, {"seeds", seeds}, {"trials", vo.trials}, {"translations", vo.translations},
                    {"points", vo.points},   {"dim", vo.dim}, {"side", vo.side},     {"intensity", vo.intensity},
                    {"grid_dim", vo.grid_dim}, {"delta", vo.delta_fraction}};
        ctx.manifest("verify", params, std::nullopt, {}, verify_out);
      }
      return ppf_report_passed(report.p) ? kExitOk : kExitFailure;
    }
    if (*exp) {
      std::string text;
      json params{{"format", export_format}, {"table", export_table}};
      std::vector<std::string> inputs;
      std::optional<std::uint64_t> seed;
      if (!export_kernel.empty()) {
        if (!export_in.empty()) throw UsageError("--kernel and --input are exclusive");
        if (export_format != "csv") {
          throw ApiError(PPF_UNKNOWN_FORMAT, "UnknownFormat: MTP traces export as csv, not '" + export_format + "'");
        }
        if (export_sampler.process.empty()) throw UsageError("--kernel needs --process");
        const ppf_sampler s = export_sampler.resolve();
        seed = s.seed;
        ReportHandle report;
        check(ppf_mtp_estimate(export_kernel.c_str(), &s, export_trials, export_threads, &report.p));
        text = ppf_report_trace_csv(report.p);
        params["kernel"] = export_kernel;
        params["trials"] = export_trials;
        params["sampler"] = export_sampler.params();
        std::cerr << ppf_report_json(report.p);
      } else {
        if (export_in.empty()) throw UsageError("export needs --input or --kernel");
        GraphHandle graph;
        check(ppf_graph_load(export_in.c_str(), &graph.p));
        char* out = nullptr;
        check(ppf_graph_export(graph.p, export_format.c_str(), export_table.empty() ? nullptr : export_table.c_str(), &out));
        text = take_string(out);
        inputs.push_back(export_in);
        params["input"] = export_in;
      }
      write_text(export_out, text);
      ctx.manifest("export", params, seed, inputs, export_out);
      return kExitOk;
    }
    if (*rep) return replay(replay_manifest);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  } catch (const ApiError& e) {
    std::cerr << e.what() << "\n";
    const bool usage = e.status == PPF_UNKNOWN_FORMAT || e.status == PPF_BAD_PARAMETERS;
    return usage ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(std::move(args), true);
}
