// cecp: permutation entropy / statistical complexity analysis of time-series
// panels on the complexity-entropy causality plane.
//
// Exit codes: 0 ok, 1 internal error, 2 usage, 3 parse, 4 insufficient
// data, 5 unwritable output.

#include <openssl/evp.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cecp/cecp.hpp"

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kUsage = 2, kParse = 3, kInsufficient = 4, kUnwritable = 5 };

int exit_code_for(cecp::ErrorKind kind) {
  switch (kind) {
    case cecp::ErrorKind::parse_error:
    case cecp::ErrorKind::duplicate_date: return kParse;
    case cecp::ErrorKind::insufficient_data: return kInsufficient;
    case cecp::ErrorKind::io_error: return kUnwritable;
    default: return kUsage;
  }
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cecp::Error(cecp::ErrorKind::parse_error, "cannot open '" + path + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return hex.str();
}

// Opens `path` for writing or reports exit code 5.
std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cecp::Error(cecp::ErrorKind::io_error, "cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw cecp::Error(cecp::ErrorKind::io_error, "failed writing '" + path.string() + "'");
}

struct AnalyzeOptions {
  std::string input;
  std::string layout = "wide";
  std::string date_format = "%Y-%m-%d";
  std::string delimiter = ",";
  std::string policy = "drop";
  bool diff = false;
  double jitter = 0.0;
  std::uint64_t seed = 0;
  std::string output = "csv";
  std::string out_dir;
  unsigned threads = 1;
  cecp::AnalysisConfig config;
  std::size_t max_windows = 0;
};

int run_analyze(const AnalyzeOptions& opt) {
  cecp::PanelSource src;
  src.path = opt.input;
  src.layout = opt.layout == "long" ? cecp::PanelLayout::long_format : cecp::PanelLayout::wide;
  src.date_format = opt.date_format;
  src.policy = opt.policy == "ffill" ? cecp::MissingPolicy::forward_fill : cecp::MissingPolicy::drop;
  src.difference = opt.diff;
  src.delimiter = opt.delimiter == "\\t" ? '\t' : opt.delimiter.front();

  cecp::AnalysisConfig cfg = opt.config;
  if (opt.max_windows > 0) cfg.max_windows = opt.max_windows;
  cfg.validate();

  if (!std::filesystem::exists(src.path)) {
    throw cecp::Error(cecp::ErrorKind::parse_error, "input file '" + src.path + "' does not exist");
  }
  auto panel = cecp::load_panel(src);
  if (opt.jitter > 0.0) {
    for (std::size_t i = 0; i < panel.size(); ++i) panel[i] = cecp::add_jitter(panel[i], opt.jitter, opt.seed + i);
  }

  cecp::RunManifest manifest;
  manifest.input_path = std::filesystem::path(src.path).filename().string();
  manifest.input_digest = sha256_file(src.path);
  manifest.config = cfg;
  manifest.source = src;
  manifest.jitter_amplitude = opt.jitter;
  manifest.jitter_seed = opt.jitter > 0.0 ? opt.seed : 0;

  const auto analyses = cecp::analyze_panel(panel, cfg, opt.threads);
  const std::size_t patterns_per_window =
      cfg.window_length - static_cast<std::size_t>(cfg.dimension - 1) * static_cast<std::size_t>(cfg.delay);
  if (patterns_per_window < 5 * cecp::factorial(cfg.dimension)) {
    std::cerr << "warning: each window holds " << patterns_per_window << " patterns, fewer than 5*D! = "
              << 5 * cecp::factorial(cfg.dimension) << "; estimates are unreliable\n";
  }

  if (opt.out_dir.empty()) {
    if (opt.output == "json") {
      std::cout << cecp::analysis_json(manifest, analyses).dump(2) << '\n';
    } else {
      cecp::write_windows_csv(std::cout, analyses, src.date_format);
      std::cout << '\n';
      cecp::write_periods_csv(std::cout, analyses);
    }
    return kOk;
  }

  const std::filesystem::path dir(opt.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (opt.output == "json") {
    const auto path = dir / "analysis.json";
    auto out = open_output(path);
    out << cecp::analysis_json(manifest, analyses).dump(2) << '\n';
    finish(out, path);
  } else {
    const auto wpath = dir / "windows.csv";
    auto wout = open_output(wpath);
    cecp::write_windows_csv(wout, analyses, src.date_format);
    finish(wout, wpath);
    const auto ppath = dir / "periods.csv";
    auto pout = open_output(ppath);
    cecp::write_periods_csv(pout, analyses);
    finish(pout, ppath);
    const auto mpath = dir / "manifest.json";
    auto mout = open_output(mpath);
    mout << cecp::manifest_json(manifest, analyses).dump(2) << '\n';
    finish(mout, mpath);
  }
  return kOk;
}

struct BoundsOptions {
  std::size_t alphabet = 0;
  int dimension = 0;
  std::size_t resolution = cecp::kDefaultBoundResolution;
  std::string output = "csv";
  std::string out;
};

int run_bounds(const BoundsOptions& opt) {
  std::size_t m = opt.alphabet;
  if (m == 0) {
    if (opt.dimension < 2 || opt.dimension > cecp::kMaxDimension) {
      throw cecp::Error(cecp::ErrorKind::invalid_input, "give --alphabet M >= 2 or --dimension D in [2, 10]");
    }
    m = cecp::factorial(opt.dimension);
  }
  const auto lower = cecp::lower_bound(m, opt.resolution);
  const auto upper = cecp::upper_bound(m, opt.resolution);
  auto emit = [&](std::ostream& os) {
    if (opt.output == "json") {
      os << cecp::bounds_json(lower, upper).dump(2) << '\n';
    } else {
      cecp::write_bounds_csv(os, lower, upper);
    }
  };
  if (opt.out.empty()) {
    emit(std::cout);
  } else {
    auto out = open_output(opt.out);
    emit(out);
    finish(out, opt.out);
  }
  return kOk;
}

struct GenerateOptions {
  std::string kind = "white_noise";
  std::size_t length = 1000;
  std::uint64_t seed = 0;
  double r = 4.0;
  std::optional<double> x0;
  std::size_t transient = 1000;
  std::size_t count = 1;
  std::string label = "synthetic";
  std::string start_date = "2001-01-02";
  std::string out;
};

int run_generate(const GenerateOptions& opt) {
  const auto kind = cecp::parse_generator_kind(opt.kind);
  if (!kind) throw cecp::Error(cecp::ErrorKind::invalid_input, "unknown generator '" + opt.kind + "'");
  const auto start = cecp::parse_date(opt.start_date, "%Y-%m-%d");
  if (!start) throw cecp::Error(cecp::ErrorKind::invalid_input, "invalid --start-date '" + opt.start_date + "'");
  if (opt.count < 1) throw cecp::Error(cecp::ErrorKind::invalid_input, "--count must be at least 1");

  std::vector<cecp::RawSeries> series;
  for (std::size_t i = 0; i < opt.count; ++i) {
    cecp::GeneratorSpec spec;
    spec.kind = *kind;
    spec.length = opt.length;
    spec.seed = opt.seed + i;
    spec.logistic_r = opt.r;
    spec.logistic_x0 = opt.x0;
    spec.transient = opt.transient;
    spec.label = opt.count == 1 ? opt.label : opt.label + "_" + std::to_string(i);
    series.push_back(cecp::generate(spec));
  }
  if (opt.out.empty() || opt.out == "-") {
    cecp::write_wide(std::cout, series, "%Y-%m-%d", *start);
    return kOk;
  }
  auto out = open_output(opt.out);
  cecp::write_wide(out, series, "%Y-%m-%d", *start);
  finish(out, opt.out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation entropy and statistical complexity on the complexity-entropy causality plane"};
  app.set_version_flag("--version", cecp::kVersion);
  app.require_subcommand(1);

  AnalyzeOptions aopt;
  auto* analyze = app.add_subcommand("analyze", "Sliding-window quantifiers, period centroids and manifest for a panel");
  analyze->add_option("input", aopt.input, "Delimited text panel (header row required)")->required();
  analyze->add_option("--layout", aopt.layout, "wide: date + one column per series; long: date,label,value")
      ->check(CLI::IsMember({"wide", "long"}))
      ->capture_default_str();
  analyze->add_option("--date-format", aopt.date_format, "strftime-style date format")->capture_default_str();
  analyze->add_option("--delimiter", aopt.delimiter, "Field delimiter (single character, \\t for tab)")
      ->check([](const std::string& s) { return s.size() == 1 || s == "\\t" ? "" : "delimiter must be one character"; })
      ->capture_default_str();
  analyze->add_option("--dimension", aopt.config.dimension, "Embedding dimension D")->check(CLI::Range(2, 10))->capture_default_str();
  analyze->add_option("--delay", aopt.config.delay, "Embedding delay tau")->check(CLI::PositiveNumber)->capture_default_str();
  analyze->add_option("--window-length", aopt.config.window_length, "Datapoints per window")->check(CLI::PositiveNumber)->capture_default_str();
  analyze->add_option("--step", aopt.config.step, "Datapoints between window starts")->check(CLI::PositiveNumber)->capture_default_str();
  analyze->add_option("--period-size", aopt.config.period_size, "Windows per period cluster")->check(CLI::PositiveNumber)->capture_default_str();
  analyze->add_option("--max-windows", aopt.max_windows, "Keep at most this many windows (default: all)")->check(CLI::PositiveNumber);
  analyze->add_option("--policy", aopt.policy, "Missing values: drop or ffill (forward fill)")
      ->check(CLI::IsMember({"drop", "ffill"}))
      ->capture_default_str();
  analyze->add_flag("--diff", aopt.diff, "Analyze first differences instead of levels");
  analyze->add_option("--jitter", aopt.jitter, "Add seeded uniform noise of this amplitude (0 = off)")->check(CLI::NonNegativeNumber);
  analyze->add_option("--seed", aopt.seed, "Seed for --jitter")->capture_default_str();
  analyze->add_option("--output", aopt.output, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  analyze->add_option("--out-dir", aopt.out_dir,
                      "Write windows.csv, periods.csv, manifest.json (csv) or analysis.json (json) here instead of stdout");
  analyze->add_option("--threads", aopt.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  BoundsOptions bopt;
  auto* bounds = app.add_subcommand("bounds", "Minimum and maximum complexity curves");
  auto* alpha = bounds->add_option("--alphabet,-M", bopt.alphabet, "Alphabet size M (>= 2)");
  bounds->add_option("--dimension", bopt.dimension, "Embedding dimension D (M = D!)")->excludes(alpha);
  bounds->add_option("--resolution", bopt.resolution, "Samples per sweep (>= 2)")->capture_default_str();
  bounds->add_option("--output", bopt.output, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  bounds->add_option("--out", bopt.out, "Output file (default stdout)");

  GenerateOptions gopt;
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic series as a wide-layout panel");
  generate->add_option("--kind", gopt.kind, "white_noise, random_walk or logistic_map")->capture_default_str();
  generate->add_option("--length", gopt.length, "Values per series")->capture_default_str();
  generate->add_option("--seed", gopt.seed, "64-bit seed (series i uses seed + i)")->capture_default_str();
  generate->add_option("--r", gopt.r, "Logistic parameter r in (0, 4]")->capture_default_str();
  generate->add_option("--x0", gopt.x0, "Logistic initial value in (0, 1) (default: drawn from seed)");
  generate->add_option("--transient", gopt.transient, "Logistic steps discarded before output")->capture_default_str();
  generate->add_option("--count", gopt.count, "Number of series")->capture_default_str();
  generate->add_option("--label", gopt.label, "Series label (suffixed _i when --count > 1)")->capture_default_str();
  generate->add_option("--start-date", gopt.start_date, "Date of the first value (YYYY-MM-DD)")->capture_default_str();
  generate->add_option("--out", gopt.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze) return run_analyze(aopt);
    if (*bounds) return run_bounds(bopt);
    if (*generate) return run_generate(gopt);
  } catch (const cecp::Error& e) {
    std::cerr << "cecp: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cecp: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
